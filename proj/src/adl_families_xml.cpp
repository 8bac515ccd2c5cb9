#include <sstream>

#include "adl.hpp"

namespace arcq::adl {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string attr(const std::string& name, const std::string& value) {
    return " " + name + "=\"" + xml_escape(value) + "\"";
}

}  // namespace

std::string export_families_xml(const Model& model) {
    if (model.families.empty()) return "<families/>";

    std::ostringstream out;
    out << "<families>\n";
    for (const auto& f : model.families) {
        out << "  <family" << attr("name", f.name) << ">\n";
        for (const auto& m : f.members)
            out << "    <configuration" << attr("ref", m) << "/>\n";
        for (const auto& sub : f.subfamilies) {
            out << "    <subfamily" << attr("name", sub.name) << ">\n";
            for (const auto& m : sub.members)
                out << "      <configuration" << attr("ref", m) << "/>\n";
            out << "    </subfamily>\n";
        }
        for (const auto& s : f.states) {
            out << "    <state" << attr("name", s.name) << ">\n";
            for (const auto& r : s.envelope)
                out << "      <requirement" << attr("resource", to_string(r.resource))
                    << attr("relation", to_string(r.relation))
                    << attr("bound", format_number(r.bound)) << "/>\n";
            out << "    </state>\n";
        }
        for (const auto& t : f.transitions) {
            out << "    <transition" << attr("from", t.from) << attr("to", t.to)
                << attr("trigger", t.trigger.to_text()) << ">\n";
            for (const auto& a : t.actions) {
                std::string detail = a.detail;
                std::string target = a.target;
                if (!a.name.empty()) target += "." + a.name;
                out << "      <action" << attr("kind", to_string(a.kind)) << attr("target", target);
                if (!detail.empty()) out << attr("detail", detail);
                out << "/>\n";
            }
            out << "    </transition>\n";
        }
        out << "  </family>\n";
    }
    out << "</families>";
    return out.str();
}

}  // namespace arcq::adl
