#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adl.hpp"
#include "model.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string corpus_path(const std::string& name) {
    return std::string(ARCQ_CORPUS_DIR) + "/" + name;
}

inline arcq::Model load_corpus() {
    arcq::adl::ParseResult result =
        arcq::adl::parse_model(read_file(corpus_path("videoconf.adl")));
    if (!result.ok()) {
        std::string msg = "corpus does not parse:";
        for (const auto& e : result.errors) msg += " " + arcq::adl::render_parse_error(e);
        throw std::runtime_error(msg);
    }
    return std::move(*result.model);
}

}  // namespace testutil
