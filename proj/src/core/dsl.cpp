#include "dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace qswap::dsl {

using namespace protocol;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

struct Token {
    std::string text;
    SourceSpan span;
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        toks.push_back({line.substr(start, i - start),
                        {line_no, static_cast<int>(start) + 1, static_cast<int>(i - start)}});
    }
    return toks;
}

class Parser {
public:
    Parser(const std::string& text, const std::map<std::string, double>& overrides)
        : overrides_(overrides) {
        std::stringstream ss(text);
        std::string line;
        int n = 1;
        for (; std::getline(ss, line); ++n) lines_.push_back(tokenize_line(line, n));
    }

    ParseResult run() {
        bool saw_pragma = false;
        for (const auto& toks : lines_) {
            if (toks.empty()) continue;
            if (!saw_pragma) {
                pragma(toks);
                saw_pragma = true;
                continue;
            }
            statement(toks);
        }
        if (!saw_pragma)
            error({1, 1, 1}, "missing 'qsp 1' version pragma", {"qsp"});
        return {std::move(out_), std::move(errors_)};
    }

private:
    std::vector<std::vector<Token>> lines_;
    const std::map<std::string, double>& overrides_;
    Protocol out_;
    std::vector<ParseError> errors_;
    std::map<std::string, double> params_;
    bool field_ready_ = false; // prepared and not yet consumed by interact/inject

    void error(SourceSpan span, std::string msg, std::vector<std::string> expected = {}) {
        errors_.push_back({span, std::move(msg), std::move(expected)});
    }

    SourceSpan end_span(const std::vector<Token>& toks) const {
        const SourceSpan& s = toks.back().span;
        return {s.line, s.column + s.length, 1};
    }

    /// nullptr + error when the line has fewer than i+1 tokens.
    const Token* want(const std::vector<Token>& toks, std::size_t i, const char* what) {
        if (i < toks.size()) return &toks[i];
        error(end_span(toks), std::string("missing ") + what);
        return nullptr;
    }

    void extra_tokens(const std::vector<Token>& toks, std::size_t used) {
        if (toks.size() > used)
            error(toks[used].span, "unexpected trailing token '" + toks[used].text + "'");
    }

    void pragma(const std::vector<Token>& toks) {
        if (toks[0].text != "qsp") {
            error(toks[0].span, "file must start with the version pragma 'qsp 1'", {"qsp"});
            statement(toks); // still try to make sense of the line
            return;
        }
        const Token* v = want(toks, 1, "grammar version");
        if (v && v->text != "1")
            error(v->span, "unsupported grammar version '" + v->text + "'", {"1"});
        extra_tokens(toks, 2);
    }

    std::optional<double> number(const Token& tok) {
        const std::string& t = tok.text;
        // plain real / scientific
        double v = 0.0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec == std::errc() && res.ptr == t.data() + t.size()) return v;
        // pi-fraction: [sign][int]pi[/int]
        std::size_t i = 0;
        double sign = 1.0;
        if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            if (t[i] == '-') sign = -1.0;
            ++i;
        }
        std::size_t num_start = i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        double numer = 1.0;
        if (i > num_start) numer = std::stod(t.substr(num_start, i - num_start));
        if (t.compare(i, 2, "pi") == 0) {
            i += 2;
            double denom = 1.0;
            if (i < t.size() && t[i] == '/') {
                ++i;
                std::size_t den_start = i;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
                if (i == den_start || i != t.size()) {
                    error(tok.span, "malformed pi-fraction '" + t + "'");
                    return std::nullopt;
                }
                denom = std::stod(t.substr(den_start, i - den_start));
                if (denom == 0.0) {
                    error(tok.span, "zero denominator in '" + t + "'");
                    return std::nullopt;
                }
            } else if (i != t.size()) {
                error(tok.span, "malformed pi-fraction '" + t + "'");
                return std::nullopt;
            }
            return sign * numer * std::numbers::pi / denom;
        }
        // parameter reference
        auto it = params_.find(t);
        if (it != params_.end()) return it->second;
        error(tok.span, "expected a number, pi-fraction, or parameter name, got '" + t + "'");
        return std::nullopt;
    }

    const atoms::AtomSpecies* atom_species(const Token& tok) {
        const atoms::AtomSpecies* sp = out_.species_of(tok.text);
        if (!sp) error(tok.span, "undeclared atom '" + tok.text + "'");
        return sp;
    }

    bool check_level(const Token& atom, const atoms::AtomSpecies& sp, const Token& level) {
        if (sp.level_index(level.text) >= 0) return true;
        error(level.span, "atom '" + atom.text + "' (" + sp.name() + ") has no level '" +
                              level.text + "'",
              sp.level_names());
        return false;
    }

    void field_prepared(const Token& kw) {
        if (field_ready_)
            error(kw.span, "field prepared twice with no interaction in between");
        field_ready_ = true;
    }

    void statement(const std::vector<Token>& toks) {
        const std::string& kw = toks[0].text;
        if (kw == "qsp") {
            error(toks[0].span, "duplicate version pragma");
        } else if (kw == "protocol") {
            if (const Token* t = want(toks, 1, "protocol name")) {
                out_.name = t->text;
                extra_tokens(toks, 2);
            }
        } else if (kw == "param") {
            const Token* name = want(toks, 1, "parameter name");
            const Token* val = name ? want(toks, 2, "parameter value") : nullptr;
            if (!name || !val) return;
            auto v = number(*val);
            if (!v) return;
            double resolved = *v;
            if (auto it = overrides_.find(name->text); it != overrides_.end())
                resolved = it->second;
            if (params_.count(name->text)) {
                error(name->span, "duplicate parameter '" + name->text + "'");
                return;
            }
            params_[name->text] = resolved;
            out_.params.emplace_back(name->text, resolved);
            extra_tokens(toks, 3);
        } else if (kw == "atom") {
            const Token* label = want(toks, 1, "atom label");
            const Token* spec = label ? want(toks, 2, "species") : nullptr;
            if (!label || !spec) return;
            if (out_.species_of(label->text)) {
                error(label->span, "duplicate atom declaration '" + label->text + "'");
                return;
            }
            auto sp = atoms::species_from_name(spec->text);
            if (!sp) {
                error(spec->span, "unknown species '" + spec->text + "'",
                      {"twolevel", "cascade", "lambda"});
                return;
            }
            out_.atoms.push_back({label->text, *sp});
            extra_tokens(toks, 3);
        } else if (kw == "field") {
            const Token* kind = want(toks, 1, "field kind");
            if (!kind) return;
            if (kind->text == "coherent") {
                const Token* a = want(toks, 2, "amplitude");
                if (!a) return;
                if (auto v = number(*a)) {
                    field_prepared(toks[0]);
                    out_.steps.push_back(PrepareFieldCoherent{*v});
                }
                extra_tokens(toks, 3);
            } else if (kind->text == "fockplus") {
                field_prepared(toks[0]);
                out_.steps.push_back(PrepareFieldFockPlus{});
                extra_tokens(toks, 2);
            } else if (kind->text == "vacuum") {
                field_prepared(toks[0]);
                out_.steps.push_back(PrepareFieldVacuum{});
                extra_tokens(toks, 2);
            } else {
                error(kind->span, "unknown field kind '" + kind->text + "'",
                      {"coherent", "fockplus", "vacuum"});
            }
        } else if (kw == "prepare") {
            const Token* atom = want(toks, 1, "atom label");
            const Token* level = atom ? want(toks, 2, "level") : nullptr;
            if (!atom || !level) return;
            const atoms::AtomSpecies* sp = atom_species(*atom);
            if (!sp || !check_level(*atom, *sp, *level)) return;
            out_.steps.push_back(PrepareAtom{atom->text, level->text});
            extra_tokens(toks, 3);
        } else if (kw == "rotate") {
            const Token* atom = want(toks, 1, "atom label");
            const Token* rot = atom ? want(toks, 2, "rotation name") : nullptr;
            if (!atom || !rot) return;
            const atoms::AtomSpecies* sp = atom_species(*atom);
            auto name = atoms::rotation_from_name(rot->text);
            if (!name) {
                error(rot->span, "unknown rotation '" + rot->text + "'",
                      {"MA", "RI", "R4", "RC", "R1", "R2", "K"});
                return;
            }
            if (!sp) return;
            try {
                atoms::rotation(*name, *sp);
            } catch (const DimensionError& e) {
                error(rot->span, e.what());
                return;
            }
            out_.steps.push_back(Rotate{atom->text, *name});
            extra_tokens(toks, 3);
        } else if (kw == "interact") {
            const Token* atom = want(toks, 1, "atom label");
            const Token* kind = atom ? want(toks, 2, "interaction kind") : nullptr;
            const Token* val = kind ? want(toks, 3, "angle") : nullptr;
            if (!atom || !kind || !val) return;
            const atoms::AtomSpecies* sp = atom_species(*atom);
            auto v = number(*val);
            if (!sp || !v) return;
            if (kind->text == "dispersive") {
                if (sp->kind == atoms::SpeciesKind::TwoLevel) {
                    error(atom->span,
                          "dispersive interaction needs a cascade or lambda atom");
                    return;
                }
                out_.steps.push_back(InteractDispersive{atom->text, *v});
            } else if (kind->text == "resonant") {
                if (sp->kind != atoms::SpeciesKind::TwoLevel) {
                    error(atom->span, "resonant interaction needs a twolevel atom");
                    return;
                }
                out_.steps.push_back(InteractResonant{atom->text, *v});
            } else {
                error(kind->span, "unknown interaction kind '" + kind->text + "'",
                      {"dispersive", "resonant"});
                return;
            }
            field_ready_ = false;
            extra_tokens(toks, 4);
        } else if (kw == "inject") {
            const Token* a = want(toks, 1, "amplitude");
            if (!a) return;
            if (auto v = number(*a)) {
                out_.steps.push_back(Inject{*v});
                field_ready_ = false;
            }
            extra_tokens(toks, 2);
        } else if (kw == "measure") {
            const Token* atom = want(toks, 1, "atom label");
            if (!atom || !atom_species(*atom)) return;
            out_.steps.push_back(Measure{atom->text});
            extra_tokens(toks, 2);
        } else if (kw == "postselect") {
            const Token* atom = want(toks, 1, "atom label");
            const Token* level = atom ? want(toks, 2, "level") : nullptr;
            if (!atom || !level) return;
            const atoms::AtomSpecies* sp = atom_species(*atom);
            if (!sp || !check_level(*atom, *sp, *level)) return;
            out_.steps.push_back(PostSelect{atom->text, level->text});
            extra_tokens(toks, 3);
        } else if (kw == "assert") {
            assert_statement(toks);
        } else {
            error(toks[0].span, "unknown keyword '" + kw + "'",
                  {"atom", "field", "prepare", "rotate", "interact", "inject", "measure",
                   "postselect", "assert", "param"});
        }
    }

    void assert_statement(const std::vector<Token>& toks) {
        const Token* kind = want(toks, 1, "assertion kind");
        if (!kind) return;
        if (kind->text == "fidelity") {
            const Token* a = want(toks, 2, "first atom");
            const Token* b = a ? want(toks, 3, "second atom") : nullptr;
            const Token* bell = b ? want(toks, 4, "bell state") : nullptr;
            const Token* tol = bell ? want(toks, 5, "tolerance") : nullptr;
            if (!a || !b || !bell || !tol) return;
            const atoms::AtomSpecies* sa = atom_species(*a);
            const atoms::AtomSpecies* sb = atom_species(*b);
            auto bk = bell_from_name(bell->text);
            if (!bk) {
                error(bell->span, "unknown bell state '" + bell->text + "'",
                      {"phi+", "phi-", "psi+", "psi-"});
                return;
            }
            auto v = number(*tol);
            if (!sa || !sb || !v) return;
            if (sa->kind != sb->kind || sa->kind == atoms::SpeciesKind::TwoLevel) {
                error(a->span, "fidelity assertion needs two atoms of the same "
                               "cascade or lambda species");
                return;
            }
            out_.steps.push_back(AssertFidelity{a->text, b->text, *bk, *v});
            extra_tokens(toks, 6);
        } else if (kind->text == "probability") {
            const Token* path = want(toks, 2, "outcome path");
            const Token* exp = path ? want(toks, 3, "expected probability") : nullptr;
            const Token* tol = exp ? want(toks, 4, "tolerance") : nullptr;
            if (!path || !exp || !tol) return;
            // validate the path syntax here so parse errors carry spans
            std::stringstream ss(path->text);
            std::string item;
            bool bad = false;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
                    bad = true;
                    break;
                }
                Token atom_tok{item.substr(0, eq), path->span};
                const atoms::AtomSpecies* sp = atom_species(atom_tok);
                if (!sp || !check_level(atom_tok, *sp, {item.substr(eq + 1), path->span}))
                    bad = true;
            }
            if (path->text.empty() || bad) {
                if (path->text.empty() ||
                    path->text.find('=') == std::string::npos)
                    error(path->span, "malformed outcome path '" + path->text + "'");
                return;
            }
            auto e = number(*exp);
            auto t = number(*tol);
            if (!e || !t) return;
            out_.steps.push_back(AssertProbability{path->text, *e, *t});
            extra_tokens(toks, 5);
        } else {
            error(kind->span, "unknown assertion kind '" + kind->text + "'",
                  {"fidelity", "probability"});
        }
    }
};

} // namespace

ParseResult parse(const std::string& text, const std::map<std::string, double>& overrides) {
    return Parser(text, overrides).run();
}

namespace {

struct StepWriter {
    std::ostream& os;
    void operator()(const PrepareAtom& s) { os << "prepare " << s.atom << " " << s.level; }
    void operator()(const PrepareFieldCoherent& s) {
        os << "field coherent " << format_double(s.alpha);
    }
    void operator()(const PrepareFieldFockPlus&) { os << "field fockplus"; }
    void operator()(const PrepareFieldVacuum&) { os << "field vacuum"; }
    void operator()(const Rotate& s) {
        os << "rotate " << s.atom << " " << atoms::rotation_name(s.name);
    }
    void operator()(const InteractDispersive& s) {
        os << "interact " << s.atom << " dispersive " << format_double(s.phi);
    }
    void operator()(const InteractResonant& s) {
        os << "interact " << s.atom << " resonant " << format_double(s.g_tau);
    }
    void operator()(const Inject& s) { os << "inject " << format_double(s.beta); }
    void operator()(const Measure& s) { os << "measure " << s.atom; }
    void operator()(const PostSelect& s) { os << "postselect " << s.atom << " " << s.level; }
    void operator()(const AssertFidelity& s) {
        os << "assert fidelity " << s.atom_a << " " << s.atom_b << " "
           << bell_name(s.target) << " " << format_double(s.tolerance);
    }
    void operator()(const AssertProbability& s) {
        os << "assert probability " << s.path << " " << format_double(s.expected) << " "
           << format_double(s.tolerance);
    }
};

} // namespace

std::string serialize(const Protocol& p) {
    std::ostringstream os;
    os << "qsp 1\n";
    if (!p.name.empty()) os << "protocol " << p.name << "\n";
    for (const auto& [name, value] : p.params)
        os << "param " << name << " " << format_double(value) << "\n";
    for (const auto& a : p.atoms) os << "atom " << a.label << " " << a.species.name() << "\n";
    StepWriter w{os};
    for (const Step& s : p.steps) {
        std::visit(w, s);
        os << "\n";
    }
    return os.str();
}

} // namespace qswap::dsl
