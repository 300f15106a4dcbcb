#include "ahosm/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// shortest decimal form that parses back to exactly the same double
std::string fmt_double(double x) {
    char buf[40];
    if (x == std::floor(x) && std::fabs(x) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", x);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

struct Cursor {
    std::string origin;
    int line = 0;
    int col = 1;
};

[[noreturn]] void fail(const Cursor& at, const std::string& msg) {
    throw ParseError(at.origin, at.line, at.col, msg);
}

double parse_double(std::string_view text, const Cursor& at) {
    const std::string owned(trim(text));
    if (owned.empty()) fail(at, "expected a number");
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) fail(at, "malformed number '" + owned + "'");
    if (!std::isfinite(v)) fail(at, "number out of range '" + owned + "'");
    return v;
}

long long parse_int(std::string_view text, const Cursor& at) {
    const std::string owned(trim(text));
    if (owned.empty()) fail(at, "expected an integer");
    char* end = nullptr;
    const long long v = std::strtoll(owned.c_str(), &end, 10);
    if (end != owned.c_str() + owned.size()) fail(at, "malformed integer '" + owned + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view text, const Cursor& at) {
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(rest.substr(0, comma), at));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

SignalTerm parse_term(std::string_view piece, const Cursor& at) {
    piece = trim(piece);
    const auto open = piece.find('(');
    if (open == std::string_view::npos || piece.back() != ')')
        fail(at, "malformed signal term '" + std::string(piece) +
                     "' (expected const(c), sin(a,w), sgn_sin(a,w) or sgn_cos(a,w))");
    const std::string name(trim(piece.substr(0, open)));
    const std::string_view inner = piece.substr(open + 1, piece.size() - open - 2);
    const auto args = split_top_level(inner, ',');

    SignalTerm term;
    std::size_t arity = 2;
    if (name == "const") { term.kind = TermKind::constant; arity = 1; }
    else if (name == "sin") term.kind = TermKind::sine;
    else if (name == "sgn_sin") term.kind = TermKind::sgn_sine;
    else if (name == "sgn_cos") term.kind = TermKind::sgn_cosine;
    else fail(at, "unknown signal term '" + name + "'");
    if (args.size() != arity)
        fail(at, "term '" + name + "' takes " + std::to_string(arity) + " argument(s)");
    term.amplitude = parse_double(args[0], at);
    if (arity == 2) term.omega = parse_double(args[1], at);
    return term;
}

SignalSpec parse_signal(std::string_view text, const Cursor& at) {
    SignalSpec spec;
    for (auto piece : split_top_level(text, '+')) spec.terms.push_back(parse_term(piece, at));
    return spec;
}

GainSpec parse_gain(std::string_view text, const Cursor& at) {
    const std::string_view t = trim(text);
    if (t == "log") return GainSpec{GainFamily::logarithmic};
    const auto open = t.find('(');
    if (open == std::string_view::npos || t.back() != ')')
        fail(at, "malformed gain function '" + std::string(t) +
                     "' (expected log, const(c) or affine(a,b))");
    const std::string name(trim(t.substr(0, open)));
    const auto args = split_top_level(t.substr(open + 1, t.size() - open - 2), ',');
    if (name == "const") {
        if (args.size() != 1) fail(at, "const gain takes one argument");
        return GainSpec{GainFamily::constant, parse_double(args[0], at)};
    }
    if (name == "affine") {
        if (args.size() != 2) fail(at, "affine gain takes two arguments");
        return GainSpec{GainFamily::affine, parse_double(args[0], at), parse_double(args[1], at)};
    }
    fail(at, "unknown gain function '" + name + "'");
}

struct KeyEntry {
    std::string value;
    Cursor at;
};
using Section = std::map<std::string, KeyEntry>;

}  // namespace

SimulationSpec to_simulation_spec(const Scenario& sc) {
    SimulationSpec spec;
    spec.stabilizer = sc.stabilizer;
    spec.chain = sc.chain;
    spec.adaptive = sc.adaptive;
    spec.uncertainty = sc.uncertainty;
    spec.z0 = sc.z0;
    spec.dt = sc.dt;
    spec.t_final = sc.t_final;
    spec.method = sc.method;
    spec.record_stride = sc.record_stride;
    spec.law = sc.law;
    spec.blowup_guard = sc.blowup_guard;
    return spec;
}

Scenario parse_scenario(std::string_view text, const std::string& origin) {
    static const std::map<std::string, std::vector<std::string>> kKnown = {
        {"chain", {"stabilizer", "r", "p", "kappa", "gains", "betas"}},
        {"adaptive", {"epsilon", "k", "g"}},
        {"uncertainty", {"phi", "gamma", "phi_bound", "gamma_min", "gamma_max"}},
        {"simulation",
         {"z0", "dt", "t_final", "method", "control", "record_stride", "seed",
          "blowup_guard"}},
    };

    std::map<std::string, Section> sections;
    std::map<std::string, Cursor> section_at;
    std::string current;
    int lineno = 0;
    std::string_view rest = text;
    while (!rest.empty() || lineno == 0) {
        const auto nl = rest.find('\n');
        std::string_view raw = rest.substr(0, nl);
        rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
        ++lineno;

        const auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) {
            if (nl == std::string_view::npos) break;
            continue;
        }
        const int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        Cursor at{origin, lineno, col};

        if (line.front() == '[') {
            if (line.back() != ']') fail(at, "malformed section header");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (!kKnown.count(name)) fail(at, "unknown section '[" + name + "]'");
            if (sections.count(name)) fail(at, "duplicate section '[" + name + "]'");
            sections[name];
            section_at[name] = at;
            current = name;
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) fail(at, "expected 'key = value'");
            if (current.empty()) fail(at, "key outside of any section");
            const std::string key(trim(line.substr(0, eq)));
            const auto& known = kKnown.at(current);
            if (std::find(known.begin(), known.end(), key) == known.end())
                fail(at, "unknown key '" + key + "' in section [" + current + "]");
            auto& sec = sections[current];
            if (sec.count(key)) fail(at, "duplicate key '" + key + "'");
            Cursor vat{origin, lineno,
                       static_cast<int>(raw.find('=', col - 1)) + 2};
            sec[key] = KeyEntry{std::string(trim(line.substr(eq + 1))), vat};
        }
        if (nl == std::string_view::npos) break;
    }

    for (const char* required : {"chain", "adaptive", "uncertainty", "simulation"})
        if (!sections.count(required))
            throw ParseError(origin, lineno, 1, std::string("missing section [") + required + "]");

    auto need = [&](const char* sec, const char* key) -> const KeyEntry& {
        const auto& s = sections.at(sec);
        const auto it = s.find(key);
        if (it == s.end())
            fail(section_at.at(sec), std::string("missing key '") + key + "' in [" + sec + "]");
        return it->second;
    };
    auto get = [&](const char* sec, const char* key) -> const KeyEntry* {
        const auto& s = sections.at(sec);
        const auto it = s.find(key);
        return it == s.end() ? nullptr : &it->second;
    };

    Scenario sc;

    // [chain]
    const auto& stab = need("chain", "stabilizer");
    if (stab.value == "hong") sc.stabilizer = StabilizerKind::hong;
    else if (stab.value == "first_order_sign") sc.stabilizer = StabilizerKind::first_order_sign;
    else fail(stab.at, "stabilizer must be 'hong' or 'first_order_sign'");

    if (sc.stabilizer == StabilizerKind::hong) {
        const auto& rke = need("chain", "r");
        const long long r = parse_int(rke.value, rke.at);
        const auto& pe = need("chain", "p");
        const auto& ke = need("chain", "kappa");
        const auto& ge = need("chain", "gains");
        std::vector<double> betas;
        if (const auto* be = get("chain", "betas")) {
            betas = parse_double_list(be->value, be->at);
            sc.betas_overridden = true;
        }
        try {
            sc.chain = make_chain_config(static_cast<int>(r), parse_double(pe.value, pe.at),
                                         parse_double(ke.value, ke.at),
                                         parse_double_list(ge.value, ge.at), betas);
        } catch (const ConfigError& e) {
            fail(section_at.at("chain"), e.what());
        }
    } else {
        for (const char* key : {"r", "p", "kappa", "gains", "betas"})
            if (const auto* e = get("chain", key))
                fail(e->at, std::string("key '") + key +
                                "' does not apply to the first_order_sign stabilizer");
    }

    // [adaptive]
    {
        const auto& ee = need("adaptive", "epsilon");
        const auto& ke = need("adaptive", "k");
        const auto& ge = need("adaptive", "g");
        try {
            sc.adaptive = make_adaptive_config(
                parse_double(ee.value, ee.at), parse_double(ke.value, ke.at),
                parse_gain(ge.value, ge.at),
                sc.stabilizer == StabilizerKind::first_order_sign);
        } catch (const ConfigError& e) {
            fail(section_at.at("adaptive"), e.what());
        }
    }

    // [uncertainty]
    {
        const auto& pe = need("uncertainty", "phi");
        const auto& ge = need("uncertainty", "gamma");
        const auto& pb = need("uncertainty", "phi_bound");
        const auto& gm = need("uncertainty", "gamma_min");
        const auto& gM = need("uncertainty", "gamma_max");
        try {
            sc.uncertainty = make_uncertainty_model(
                parse_signal(pe.value, pe.at), parse_signal(ge.value, ge.at),
                parse_double(pb.value, pb.at), parse_double(gm.value, gm.at),
                parse_double(gM.value, gM.at));
        } catch (const ConfigError& e) {
            fail(section_at.at("uncertainty"), e.what());
        }
    }

    // [simulation]
    {
        const auto& z0e = need("simulation", "z0");
        sc.z0 = parse_double_list(z0e.value, z0e.at);
        const auto& dte = need("simulation", "dt");
        sc.dt = parse_double(dte.value, dte.at);
        if (!(sc.dt > 0.0)) fail(dte.at, "dt must be positive");
        const auto& tfe = need("simulation", "t_final");
        sc.t_final = parse_double(tfe.value, tfe.at);
        if (!(sc.t_final > sc.dt)) fail(tfe.at, "t_final must exceed dt");
        if (const auto* me = get("simulation", "method")) {
            if (me->value == "euler") sc.method = Integrator::euler;
            else if (me->value == "rk4") sc.method = Integrator::rk4;
            else fail(me->at, "method must be 'euler' or 'rk4'");
        }
        if (const auto* ce = get("simulation", "control")) {
            if (ce->value == "adaptive") sc.law = ControlLaw::adaptive;
            else if (ce->value == "stabilizer") sc.law = ControlLaw::stabilizer_only;
            else fail(ce->at, "control must be 'adaptive' or 'stabilizer'");
        }
        if (const auto* se = get("simulation", "record_stride")) {
            const long long stride = parse_int(se->value, se->at);
            if (stride < 1) fail(se->at, "record_stride must be >= 1");
            sc.record_stride = static_cast<int>(stride);
        }
        if (const auto* se = get("simulation", "seed")) {
            const long long seed = parse_int(se->value, se->at);
            if (seed < 0) fail(se->at, "seed must be nonnegative");
            sc.seed = static_cast<std::uint64_t>(seed);
        }
        if (const auto* be = get("simulation", "blowup_guard")) {
            sc.blowup_guard = parse_double(be->value, be->at);
            if (!(sc.blowup_guard > 0.0)) fail(be->at, "blowup_guard must be positive");
        }
        if (sc.stabilizer == StabilizerKind::hong &&
            static_cast<int>(sc.z0.size()) != sc.chain.r)
            fail(z0e.at, "z0 dimension must equal chain order r");
        if (sc.stabilizer == StabilizerKind::first_order_sign && sc.z0.size() != 1)
            fail(z0e.at, "z0 must be scalar for the first_order_sign stabilizer");
    }

    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += fmt_double(v[i]);
        }
        return s;
    };

    os << "[chain]\n";
    if (sc.stabilizer == StabilizerKind::hong) {
        os << "stabilizer = hong\n";
        os << "r = " << sc.chain.r << "\n";
        os << "p = " << fmt_double(sc.chain.p) << "\n";
        os << "kappa = " << fmt_double(sc.chain.kappa) << "\n";
        os << "gains = " << list(sc.chain.gains) << "\n";
        if (sc.betas_overridden) os << "betas = " << list(sc.chain.betas) << "\n";
    } else {
        os << "stabilizer = first_order_sign\n";
    }

    os << "\n[adaptive]\n";
    os << "epsilon = " << fmt_double(sc.adaptive.epsilon) << "\n";
    os << "k = " << fmt_double(sc.adaptive.k) << "\n";
    os << "g = ";
    switch (sc.adaptive.g.family) {
        case GainFamily::logarithmic: os << "log"; break;
        case GainFamily::constant: os << "const(" << fmt_double(sc.adaptive.g.a) << ")"; break;
        case GainFamily::affine:
            os << "affine(" << fmt_double(sc.adaptive.g.a) << ", " << fmt_double(sc.adaptive.g.b)
               << ")";
            break;
    }
    os << "\n";

    auto signal = [&](const SignalSpec& s) {
        if (s.terms.empty()) return std::string("const(0)");
        std::string out;
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            if (i) out += " + ";
            const auto& t = s.terms[i];
            switch (t.kind) {
                case TermKind::constant: out += "const(" + fmt_double(t.amplitude) + ")"; break;
                case TermKind::sine:
                    out += "sin(" + fmt_double(t.amplitude) + ", " + fmt_double(t.omega) + ")";
                    break;
                case TermKind::sgn_sine:
                    out += "sgn_sin(" + fmt_double(t.amplitude) + ", " + fmt_double(t.omega) + ")";
                    break;
                case TermKind::sgn_cosine:
                    out += "sgn_cos(" + fmt_double(t.amplitude) + ", " + fmt_double(t.omega) + ")";
                    break;
            }
        }
        return out;
    };
    os << "\n[uncertainty]\n";
    os << "phi = " << signal(sc.uncertainty.phi) << "\n";
    os << "gamma = " << signal(sc.uncertainty.gamma) << "\n";
    os << "phi_bound = " << fmt_double(sc.uncertainty.phi_bar) << "\n";
    os << "gamma_min = " << fmt_double(sc.uncertainty.gamma_min) << "\n";
    os << "gamma_max = " << fmt_double(sc.uncertainty.gamma_max) << "\n";

    os << "\n[simulation]\n";
    os << "z0 = " << list(sc.z0) << "\n";
    os << "dt = " << fmt_double(sc.dt) << "\n";
    os << "t_final = " << fmt_double(sc.t_final) << "\n";
    os << "method = " << (sc.method == Integrator::euler ? "euler" : "rk4") << "\n";
    os << "control = " << (sc.law == ControlLaw::adaptive ? "adaptive" : "stabilizer") << "\n";
    os << "record_stride = " << sc.record_stride << "\n";
    os << "seed = " << sc.seed << "\n";
    os << "blowup_guard = " << fmt_double(sc.blowup_guard) << "\n";
    return os.str();
}

namespace {

UncertaintyModel paper_uncertainty() {
    SignalSpec phi;
    phi.terms.push_back({TermKind::sgn_cosine, 5.0, 1.0});
    phi.terms.push_back({TermKind::sine, -10.0, 2.0});
    SignalSpec gamma;
    gamma.terms.push_back({TermKind::constant, 3.0, 0.0});
    gamma.terms.push_back({TermKind::sgn_sine, 2.0, 3.0});
    return make_uncertainty_model(phi, gamma, 15.0, 1.0, 5.0);
}

Scenario make_paper_order1() {
    Scenario sc;
    sc.stabilizer = StabilizerKind::first_order_sign;
    sc.adaptive = make_adaptive_config(0.1, 1.0, GainSpec{GainFamily::constant, 1.0}, true);
    sc.uncertainty = paper_uncertainty();
    sc.z0 = {5.0};
    sc.dt = 1e-4;
    sc.t_final = 20.0;
    sc.method = Integrator::euler;
    sc.record_stride = 1;
    sc.seed = 1;
    return sc;
}

Scenario make_paper_order3() {
    Scenario sc;
    sc.stabilizer = StabilizerKind::hong;
    sc.chain = make_chain_config(3, 1.0, -0.25, {1.0, 2.0, 5.0});
    sc.adaptive = make_adaptive_config(0.01, 1.0, GainSpec{GainFamily::logarithmic});
    sc.uncertainty = paper_uncertainty();
    sc.z0 = {1.0, 0.0, 0.0};
    sc.dt = 1e-4;
    sc.t_final = 50.0;
    sc.method = Integrator::euler;
    sc.record_stride = 10;
    sc.seed = 1;
    return sc;
}

// Same scenario with gains for which the sampled decrease certificate holds,
// so the convergence-time bound pipeline runs end to end.
Scenario make_order3_certified() {
    Scenario sc = make_paper_order3();
    sc.chain = make_chain_config(3, 1.0, -0.25, {0.5, 2.0, 10.0});
    return sc;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {"paper-order1", "paper-order3",
                                                   "order3-certified"};
    return names;
}

bool is_builtin_scenario(const std::string& name) {
    const auto& names = builtin_scenario_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario builtin_scenario(const std::string& name) {
    if (name == "paper-order1") return make_paper_order1();
    if (name == "paper-order3") return make_paper_order3();
    if (name == "order3-certified") return make_order3_certified();
    throw ConfigError("unknown built-in scenario '" + name + "'");
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

Scenario resolve_scenario(const std::string& name_or_path) {
    if (is_builtin_scenario(name_or_path)) return builtin_scenario(name_or_path);
    return load_scenario_file(name_or_path);
}

}  // namespace ahosm
