#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "adl.hpp"

namespace arcq::adl {

std::string format_number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    return std::string(buf, res.ptr);
}

std::string render_parse_error(const ParseError& e) {
    std::ostringstream out;
    out << e.span.line << ":" << e.span.column << ": expected " << e.expected << ", found "
        << (e.found.empty() ? "end of input" : "'" + e.found + "'");
    return out.str();
}

namespace {

enum class Tok { Word, Number, String, Punct, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    double number = 0.0;
    SourceSpan span;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {
        "model",      "device",     "cpu",        "memory",    "battery",    "link",
        "connects",   "bandwidth",  "component",  "connector", "contextual", "port",
        "data",       "in",         "out",        "context",   "control",    "qos",
        "role",       "source",     "sink",       "service",   "reduce",     "quality",
        "high",       "medium",     "low",        "requires",  "param",      "configuration",
        "level",      "PIM",        "CPIM",       "use",       "as",         "with",
        "attach",     "to",         "deploy",     "on",        "buffer",     "capacity",
        "fill",       "drain",      "weight",     "family",    "member",     "subfamily",
        "state",      "transition", "do",         "event",     "overflow",   "underflow",
        "fault",      "move",       "set",        "add",       "remove",     "substitute",
        "attachsub",  "detachsub",  "moveto",     "thresholds","coupling",   "cohesion",
        "complexity", "MIPS",       "MB",         "KB",        "kbps",       "buffer_fill",
    };
    return kw;
}

struct ParseAbort {
    ParseError error;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> tokens() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t = next();
            bool end = t.type == Tok::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '#') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        Token t;
        t.span = {line_, col_, 1};
        if (pos_ >= text_.size()) {
            t.type = Tok::End;
            return t;
        }
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                word += advance();
            t.type = Tok::Word;
            t.text = std::move(word);
            t.span.length = static_cast<int>(t.text.size());
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())))
                num += advance();
            if (peek() == '.' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                num += advance();
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())))
                    num += advance();
            }
            t.type = Tok::Number;
            t.text = num;
            t.span.length = static_cast<int>(num.size());
            std::from_chars(num.data(), num.data() + num.size(), t.number);
            return t;
        }
        if (c == '"') {
            advance();
            std::string value;
            while (pos_ < text_.size() && peek() != '"' && peek() != '\n') {
                char ch = advance();
                if (ch == '\\' && pos_ < text_.size() && (peek() == '"' || peek() == '\\'))
                    ch = advance();
                value += ch;
            }
            if (peek() != '"')
                throw ParseAbort{{t.span, "closing '\"'", std::string(1, peek())}};
            advance();
            t.type = Tok::String;
            t.text = std::move(value);
            t.span.length = static_cast<int>(t.text.size()) + 2;
            return t;
        }
        // multi-character punctuation first
        if ((c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') ||
            ((c == '<' || c == '>') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=')) {
            t.type = Tok::Punct;
            t.text += advance();
            t.text += advance();
            t.span.length = 2;
            return t;
        }
        if (std::string("{}();=.,:%").find(c) != std::string::npos) {
            t.type = Tok::Punct;
            t.text = std::string(1, advance());
            return t;
        }
        throw ParseAbort{{t.span, "a token", std::string(1, c)}};
    }
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).tokens()) {}

    Model parse() {
        Model model;
        expect_word("model");
        model.name = ident();
        expect_punct("{");
        while (!at_punct("}")) {
            if (at_word("device"))
                model.devices.push_back(device());
            else if (at_word("link"))
                model.links.push_back(link());
            else if (at_word("component"))
                model.components.push_back(component());
            else if (at_word("connector") || at_word("contextual"))
                model.connectors.push_back(connector());
            else if (at_word("configuration"))
                model.configurations.push_back(configuration());
            else if (at_word("family"))
                model.families.push_back(family());
            else if (at_word("thresholds"))
                model.thresholds = thresholds();
            else
                fail("'device', 'link', 'component', 'connector', 'configuration', 'family' or "
                     "'thresholds'");
        }
        expect_punct("}");
        if (peek().type != Tok::End) fail("end of input");
        return model;
    }

private:
    std::vector<Token> tokens_;
    std::size_t index_ = 0;

    const Token& peek(int ahead = 0) const {
        std::size_t i = index_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    Token take() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseAbort{{peek().span, expected, peek().text}};
    }

    bool at_word(std::string_view w) const {
        return peek().type == Tok::Word && peek().text == w;
    }
    bool at_punct(std::string_view p) const {
        return peek().type == Tok::Punct && peek().text == p;
    }

    void expect_word(const std::string& w) {
        if (!at_word(w)) fail("'" + w + "'");
        take();
    }
    void expect_punct(const std::string& p) {
        if (!at_punct(p)) fail("'" + p + "'");
        take();
    }
    bool accept_word(const std::string& w) {
        if (!at_word(w)) return false;
        take();
        return true;
    }

    std::string ident() {
        if (peek().type != Tok::Word) fail("an identifier");
        if (keywords().count(peek().text)) fail("an identifier (keywords are reserved)");
        return take().text;
    }

    double number() {
        if (peek().type != Tok::Number) fail("a number");
        return take().number;
    }

    double number_in(double lo, double hi, const std::string& what) {
        const Token& t = peek();
        double v = number();
        if (v < lo || v > hi)
            throw ParseAbort{
                {t.span, what + " in [" + format_number(lo) + "," + format_number(hi) + "]",
                 t.text}};
        return v;
    }

    std::string string_lit() {
        if (peek().type != Tok::String) fail("a string literal");
        return take().text;
    }

    Device device() {
        expect_word("device");
        Device d;
        d.name = ident();
        expect_punct("{");
        expect_word("cpu");
        expect_punct("=");
        d.cpu_mips = number();
        expect_word("MIPS");
        expect_punct(";");
        expect_word("memory");
        expect_punct("=");
        d.memory_mb = number();
        expect_word("MB");
        expect_punct(";");
        if (accept_word("battery")) {
            expect_punct("=");
            d.battery_pct = number_in(0, 100, "a battery percentage");
            expect_punct("%");
            expect_punct(";");
        }
        expect_punct("}");
        return d;
    }

    NetworkLink link() {
        expect_word("link");
        NetworkLink l;
        l.name = ident();
        expect_punct("{");
        expect_word("connects");
        l.endpoint_a = ident();
        expect_punct(",");
        l.endpoint_b = ident();
        expect_punct(";");
        expect_word("bandwidth");
        expect_punct("=");
        l.bandwidth_kbps = number();
        expect_word("kbps");
        expect_punct(";");
        expect_punct("}");
        return l;
    }

    ComponentType component() {
        expect_word("component");
        ComponentType c;
        c.name = ident();
        expect_punct("{");
        while (at_word("port")) c.ports.push_back(port());
        while (at_word("service")) c.services.push_back(service());
        while (at_word("requires")) {
            expect_word("requires");
            expect_punct("{");
            do {
                c.requirements.push_back(requirement());
            } while (!at_punct("}"));
            expect_punct("}");
        }
        expect_punct("}");
        return c;
    }

    PortDecl port() {
        expect_word("port");
        PortDecl p;
        if (accept_word("data")) {
            if (accept_word("in"))
                p.kind = PortKind::DataIn;
            else if (accept_word("out"))
                p.kind = PortKind::DataOut;
            else
                fail("'in' or 'out'");
        } else if (accept_word("context")) {
            p.kind = PortKind::Context;
        } else if (accept_word("control")) {
            p.kind = PortKind::Control;
        } else if (accept_word("qos")) {
            p.kind = PortKind::Qos;
        } else {
            fail("'data', 'context', 'control' or 'qos'");
        }
        p.name = ident();
        expect_punct(";");
        return p;
    }

    ConnectorType connector() {
        ConnectorType c;
        c.contextual = accept_word("contextual");
        expect_word("connector");
        c.name = ident();
        expect_punct("{");
        while (at_word("role")) c.roles.push_back(role());
        while (at_word("service")) c.services.push_back(service());
        while (at_word("param")) {
            expect_word("param");
            std::string name = ident();
            expect_punct("=");
            c.parameters[name] = string_lit();
            expect_punct(";");
        }
        expect_punct("}");
        return c;
    }

    RoleDecl role() {
        expect_word("role");
        RoleDecl r;
        if (accept_word("data")) {
            if (accept_word("source"))
                r.kind = RoleKind::DataSource;
            else if (accept_word("sink"))
                r.kind = RoleKind::DataSink;
            else
                fail("'source' or 'sink'");
        } else if (accept_word("context")) {
            r.kind = RoleKind::Context;
        } else {
            fail("'data' or 'context'");
        }
        r.name = ident();
        expect_punct(";");
        return r;
    }

    ServiceProfile service() {
        expect_word("service");
        ServiceProfile s;
        s.name = ident();
        expect_punct("{");
        expect_word("cpu");
        expect_punct("=");
        s.cpu_mips = number();
        expect_word("MIPS");
        expect_punct(";");
        if (accept_word("out")) {
            expect_punct("=");
            s.output_kbps = number();
            expect_word("kbps");
            expect_punct(";");
        }
        if (accept_word("reduce")) {
            expect_punct("=");
            const Token& at = peek();
            double a = number();
            expect_punct(":");
            double b = number();
            if (b <= 0 || a / b < 1.0)
                throw ParseAbort{{at.span, "a reduction ratio of at least 1:1", at.text}};
            s.reduction_ratio = a / b;
            expect_punct(";");
        }
        if (accept_word("quality")) {
            expect_punct("=");
            if (accept_word("high"))
                s.quality = QualityLevel::High;
            else if (accept_word("medium"))
                s.quality = QualityLevel::Medium;
            else if (accept_word("low"))
                s.quality = QualityLevel::Low;
            else
                fail("'high', 'medium' or 'low'");
            expect_punct(";");
        }
        if (accept_word("memory")) {
            expect_punct("=");
            s.memory_mb = number();
            expect_word("MB");
            expect_punct(";");
        }
        expect_punct("}");
        return s;
    }

    ResourceKind resource_name(bool allow_buffer_fill) {
        if (accept_word("cpu")) return ResourceKind::Cpu;
        if (accept_word("memory")) return ResourceKind::Memory;
        if (accept_word("bandwidth")) return ResourceKind::Bandwidth;
        if (accept_word("battery")) return ResourceKind::Battery;
        if (allow_buffer_fill && accept_word("buffer_fill")) return ResourceKind::BufferFill;
        fail(allow_buffer_fill ? "'cpu', 'memory', 'bandwidth', 'battery' or 'buffer_fill'"
                               : "'cpu', 'memory', 'bandwidth' or 'battery'");
    }

    Relation relop() {
        if (at_punct("<=")) {
            take();
            return Relation::Le;
        }
        if (at_punct(">=")) {
            take();
            return Relation::Ge;
        }
        fail("'<=' or '>='");
    }

    ContextRequirement requirement() {
        ContextRequirement r;
        r.resource = resource_name(false);
        r.relation = relop();
        r.bound = number();
        expect_punct(";");
        return r;
    }

    Configuration configuration() {
        expect_word("configuration");
        Configuration c;
        c.name = ident();
        if (accept_word("level")) {
            if (accept_word("PIM"))
                c.level = ModelLevel::PIM;
            else if (accept_word("CPIM"))
                c.level = ModelLevel::CPIM;
            else
                fail("'PIM' or 'CPIM'");
        }
        expect_punct("{");
        while (at_word("use")) {
            take();
            ArtifactInstance inst;
            inst.type_ref = ident();
            expect_word("as");
            inst.name = ident();
            if (accept_word("with")) inst.active_service = ident();
            expect_punct(";");
            c.instances.push_back(std::move(inst));
        }
        while (at_word("attach")) {
            take();
            Attachment a;
            a.component = ident();
            expect_punct(".");
            a.port = ident();
            expect_word("to");
            a.connector = ident();
            expect_punct(".");
            a.role = ident();
            expect_punct(";");
            c.attachments.push_back(std::move(a));
        }
        while (at_word("deploy")) {
            take();
            std::string inst = ident();
            expect_word("on");
            c.deployments[inst] = ident();
            expect_punct(";");
        }
        while (at_word("buffer")) {
            take();
            BufferDecl b;
            b.name = ident();
            expect_word("on");
            b.owner = ident();
            expect_word("capacity");
            const Token& at = peek();
            b.capacity_kb = number();
            if (b.capacity_kb <= 0)
                throw ParseAbort{{at.span, "a positive buffer capacity", at.text}};
            expect_word("KB");
            if (accept_word("drain")) {
                b.drain_kbps = number();
                expect_word("kbps");
            }
            if (accept_word("fill")) {
                b.initial_fill_pct = number_in(0, 100, "a fill percentage");
                expect_punct("%");
            }
            expect_punct(";");
            c.buffers.push_back(std::move(b));
        }
        while (at_word("weight")) {
            take();
            std::string inst = ident();
            expect_punct("=");
            const Token& at = peek();
            double w = number();
            if (w <= 0) throw ParseAbort{{at.span, "a positive weight", at.text}};
            c.weights[inst] = w;
            expect_punct(";");
        }
        expect_punct("}");
        c.normalize_weights();
        return c;
    }

    Family family() {
        expect_word("family");
        Family f;
        f.name = ident();
        expect_punct("{");
        expect_word("member");
        f.members.push_back(ident());
        expect_punct(";");
        while (accept_word("member")) {
            f.members.push_back(ident());
            expect_punct(";");
        }
        while (at_word("subfamily")) {
            take();
            Subfamily sub;
            sub.name = ident();
            expect_punct("{");
            expect_word("member");
            sub.members.push_back(ident());
            expect_punct(";");
            while (accept_word("member")) {
                sub.members.push_back(ident());
                expect_punct(";");
            }
            expect_punct("}");
            f.subfamilies.push_back(std::move(sub));
        }
        while (at_word("state")) {
            take();
            ContextState s;
            s.name = ident();
            expect_punct("{");
            do {
                s.envelope.push_back(requirement());
            } while (!at_punct("}"));
            expect_punct("}");
            f.states.push_back(std::move(s));
        }
        while (at_word("transition")) f.transitions.push_back(transition());
        expect_punct("}");
        return f;
    }

    Transition transition() {
        expect_word("transition");
        Transition t;
        t.from = ident();
        expect_punct("->");
        t.to = ident();
        expect_word("on");
        expect_word("event");
        expect_punct("(");
        if (at_word("overflow") || at_word("underflow") || at_word("fault") || at_word("move")) {
            if (accept_word("overflow"))
                t.trigger.signal = SignalKind::Overflow;
            else if (accept_word("underflow"))
                t.trigger.signal = SignalKind::Underflow;
            else if (accept_word("fault"))
                t.trigger.signal = SignalKind::Fault;
            else if (accept_word("move"))
                t.trigger.signal = SignalKind::Move;
            t.trigger.target = ident();
        } else {
            t.trigger.resource = resource_name(true);
            t.trigger.relation = relop();
            t.trigger.bound = number();
        }
        expect_punct(")");
        expect_word("do");
        expect_punct("{");
        do {
            t.actions.push_back(action());
        } while (!at_punct("}"));
        expect_punct("}");
        return t;
    }

    ReconfigurationAction action() {
        ReconfigurationAction a;
        if (accept_word("set")) {
            a.kind = ActionKind::ParamUpdate;
            a.target = ident();
            expect_punct(".");
            a.name = ident();
            expect_punct("=");
            a.detail = string_lit();
        } else if (accept_word("add")) {
            a.kind = ActionKind::AddService;
            a.target = ident();
            expect_punct(".");
            a.name = ident();
        } else if (accept_word("remove")) {
            a.kind = ActionKind::RemoveService;
            a.target = ident();
            expect_punct(".");
            a.name = ident();
        } else if (accept_word("substitute")) {
            a.kind = ActionKind::SubstituteService;
            a.target = ident();
            expect_punct(".");
            a.name = ident();
            expect_word("with");
            a.detail = ident();
        } else if (accept_word("attachsub")) {
            a.kind = ActionKind::AttachSubfamily;
            a.target = ident();
        } else if (accept_word("detachsub")) {
            a.kind = ActionKind::DetachSubfamily;
            a.target = ident();
        } else if (accept_word("moveto")) {
            a.kind = ActionKind::Move;
            a.target = ident();
            expect_word("on");
            a.detail = ident();
        } else {
            fail("'set', 'add', 'remove', 'substitute', 'attachsub', 'detachsub' or 'moveto'");
        }
        expect_punct(";");
        return a;
    }

    Thresholds thresholds() {
        expect_word("thresholds");
        Thresholds t;
        expect_punct("{");
        expect_word("coupling");
        expect_punct("<=");
        t.coupling_max = number_in(0, 1, "a ratio");
        expect_punct(";");
        expect_word("cohesion");
        expect_punct(">=");
        t.cohesion_min = number_in(0, 1, "a ratio");
        expect_punct(";");
        expect_word("complexity");
        expect_punct("<=");
        t.complexity_max = number_in(0, 1, "a ratio");
        expect_punct(";");
        expect_punct("}");
        return t;
    }
};

}  // namespace

ParseResult parse_model(std::string_view text) {
    ParseResult result;
    try {
        result.model = Parser(text).parse();
    } catch (const ParseAbort& abort) {
        result.errors.push_back(abort.error);
    }
    return result;
}

}  // namespace arcq::adl
