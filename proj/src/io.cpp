#include "ndeq/io.hpp"

#include "ndeq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace ndeq {

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& what) {
    if (!j.is_object()) throw io_error(what + ": expected a JSON object");
    for (const char* key : required)
        if (!j.contains(key)) throw io_error(what + ": missing key \"" + key + "\"");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(required.begin(), required.end(),
                                       [&](const char* r) { return key == r; }) ||
                           std::any_of(optional.begin(), optional.end(),
                                       [&](const char* o) { return key == o; });
        if (!known) throw io_error(what + ": unknown key \"" + key + "\"");
    }
}

double number_at(const json& j, const char* key, const std::string& what) {
    if (!j.at(key).is_number()) throw io_error(what + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

RationalExponent exponent_from_json(const json& j, const std::string& what) {
    require_keys(j, {"num", "den"}, {}, what);
    if (!j.at("num").is_number_integer() || !j.at("den").is_number_integer())
        throw io_error(what + ": num and den must be integers");
    return {j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()};
}

} // namespace

SequenceSpec sequence_from_json(const json& j) {
    const std::string what = "sequence";
    if (!j.is_object() || !j.contains("kind")) throw io_error(what + ": missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        require_keys(j, {"kind", "c"}, {}, what);
        return SequenceSpec::constant(number_at(j, "c", what));
    }
    if (kind == "geometric") {
        require_keys(j, {"kind", "c", "ratio"}, {}, what);
        return SequenceSpec::geometric(number_at(j, "c", what), number_at(j, "ratio", what));
    }
    if (kind == "alternating") {
        require_keys(j, {"kind", "c"}, {}, what);
        return SequenceSpec::alternating(number_at(j, "c", what));
    }
    if (kind == "power") {
        require_keys(j, {"kind", "c", "s"}, {}, what);
        return SequenceSpec::power(number_at(j, "c", what), number_at(j, "s", what));
    }
    if (kind == "table") {
        require_keys(j, {"kind", "values", "extend"}, {}, what);
        if (!j.at("values").is_array()) throw io_error(what + ": \"values\" must be an array");
        std::vector<double> values;
        for (const auto& v : j.at("values")) {
            if (!v.is_number()) throw io_error(what + ": table values must be numbers");
            values.push_back(v.get<double>());
        }
        const std::string ext = j.at("extend").get<std::string>();
        Extend e;
        if (ext == "zero") e = Extend::zero;
        else if (ext == "repeat") e = Extend::repeat_last;
        else if (ext == "error") e = Extend::fail;
        else throw io_error(what + ": extend must be \"zero\", \"repeat\", or \"error\"");
        return SequenceSpec::table(std::move(values), e);
    }
    throw io_error(what + ": unknown kind \"" + kind + "\"");
}

json sequence_to_json(const SequenceSpec& s) {
    switch (s.kind()) {
    case SequenceSpec::Kind::constant: return {{"kind", "constant"}, {"c", s.c()}};
    case SequenceSpec::Kind::geometric:
        return {{"kind", "geometric"}, {"c", s.c()}, {"ratio", s.ratio()}};
    case SequenceSpec::Kind::alternating: return {{"kind", "alternating"}, {"c", s.c()}};
    case SequenceSpec::Kind::power: return {{"kind", "power"}, {"c", s.c()}, {"s", s.s()}};
    case SequenceSpec::Kind::table: {
        const char* ext = s.extend() == Extend::zero ? "zero"
                          : s.extend() == Extend::repeat_last ? "repeat"
                                                              : "error";
        return {{"kind", "table"}, {"values", s.values()}, {"extend", ext}};
    }
    }
    throw std::logic_error("unreachable sequence kind");
}

FunctionSpec function_from_json(const json& j) {
    const std::string what = "function";
    if (!j.is_object() || !j.contains("kind")) throw io_error(what + ": missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "polynomial") {
        require_keys(j, {"kind", "coeffs"}, {}, what);
        if (!j.at("coeffs").is_array()) throw io_error(what + ": \"coeffs\" must be an array");
        std::vector<double> coeffs;
        for (const auto& c : j.at("coeffs")) {
            if (!c.is_number()) throw io_error(what + ": coefficients must be numbers");
            coeffs.push_back(c.get<double>());
        }
        return FunctionSpec::polynomial(std::move(coeffs));
    }
    if (kind == "named") {
        require_keys(j, {"kind", "name", "scale"}, {}, what);
        const std::string name = j.at("name").get<std::string>();
        NamedFunction g;
        if (name == "sin") g = NamedFunction::sin;
        else if (name == "tanh") g = NamedFunction::tanh;
        else if (name == "identity") g = NamedFunction::identity;
        else if (name == "zero") g = NamedFunction::zero;
        else throw io_error(what + ": unknown name \"" + name + "\"");
        return FunctionSpec::named(g, number_at(j, "scale", what));
    }
    throw io_error(what + ": unknown kind \"" + kind + "\"");
}

json function_to_json(const FunctionSpec& f) {
    if (f.is_polynomial()) return {{"kind", "polynomial"}, {"coeffs", f.coeffs()}};
    const char* name = f.which() == NamedFunction::sin        ? "sin"
                       : f.which() == NamedFunction::tanh     ? "tanh"
                       : f.which() == NamedFunction::identity ? "identity"
                                                              : "zero";
    return {{"kind", "named"}, {"name", name}, {"scale", f.scale()}};
}

ProblemSpec problem_from_json(const json& j) {
    require_keys(j, {"r", "p", "q", "a", "f", "gamma", "alpha", "k"}, {}, "problem");
    if (!j.at("k").is_number_integer() || j.at("k").get<std::int64_t>() < 1)
        throw io_error("problem: k must be a positive integer");
    try {
        // named locals, so partially built parts are destroyed if a later
        // validation throws
        SequenceSpec r = sequence_from_json(j.at("r"));
        SequenceSpec p = sequence_from_json(j.at("p"));
        SequenceSpec q = sequence_from_json(j.at("q"));
        SequenceSpec a = sequence_from_json(j.at("a"));
        FunctionSpec f = function_from_json(j.at("f"));
        GammaExponent gamma = validate_gamma(exponent_from_json(j.at("gamma"), "gamma"));
        AlphaExponent alpha = validate_alpha(exponent_from_json(j.at("alpha"), "alpha"));
        return ProblemSpec{std::move(r),  std::move(p), std::move(q), std::move(a),
                           std::move(f),  gamma,        alpha,        j.at("k").get<std::size_t>()};
    } catch (const std::domain_error& e) {
        throw io_error(std::string("problem: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw io_error(std::string("problem: ") + e.what());
    }
}

json problem_to_json(const ProblemSpec& p) {
    return {
        {"r", sequence_to_json(p.r)},
        {"p", sequence_to_json(p.p)},
        {"q", sequence_to_json(p.q)},
        {"a", sequence_to_json(p.a)},
        {"f", function_to_json(p.f)},
        {"gamma", {{"num", p.gamma.get().num()}, {"den", p.gamma.get().den()}}},
        {"alpha", {{"num", p.alpha.get().num()}, {"den", p.alpha.get().den()}}},
        {"k", p.k},
    };
}

json report_to_json(const HypothesisReport& r) {
    return {
        {"schema", "v1"},
        {"P", r.P},
        {"n0", r.n0},
        {"n1", r.n1},
        {"n2", r.n2},
        {"n3", r.n3},
        {"d", r.d},
        {"M_d", r.M_d},
        {"C", r.C},
        {"c_star", r.c_star},
        {"L_gamma", r.L_gamma},
        {"L_d", r.L_d},
        {"L_alpha", r.L_alpha},
        {"alpha_n3", r.alpha_n3},
        {"beta_n3", r.beta_n3},
        {"c1", r.c1},
        {"c2", r.c2},
        {"theta_hat", r.theta_hat},
        {"theta_warning", r.theta_warning},
        {"checks",
         {{"z1", r.z1}, {"z2", r.z2}, {"z3", r.z3}, {"add_series", r.add_series}}},
        {"certified", r.certified},
    };
}

json trace_to_json(const IterationTrace& t) {
    return {
        {"schema", "v1"},
        {"sup_changes", t.sup_changes},
        {"iterations", t.iterations},
        {"converged", t.converged},
        {"observed_ratio", t.observed_ratio},
    };
}

json residuals_to_json(const ResidualReport& r) {
    return {
        {"schema", "v1"},
        {"n_lo", r.n_lo},
        {"n_hi", r.n_hi},
        {"max_abs_residual", r.max_abs_residual},
        {"residuals", r.residuals},
    };
}

json stability_to_json(const StabilityReport& r) {
    json j{
        {"schema", "v1"},
        {"perturbation", r.perturbation},
        {"epsilon", r.epsilon},
        {"block_len", r.block_len},
        {"sup_diff_by_block", r.sup_diff_by_block},
        {"y_diverged", r.y_diverged},
        {"passed", r.passed},
        {"hypothesis_violations", r.hypothesis_violations},
    };
    j["theta"] = r.theta ? json(*r.theta) : json(nullptr);
    j["n4"] = r.n4 ? json(*r.n4) : json(nullptr);
    j["epsilon_index"] = r.epsilon_index ? json(*r.epsilon_index) : json(nullptr);
    return j;
}

json window_to_json(const SolutionWindow& w) {
    return {
        {"schema", "v1"}, {"start", w.start},         {"values", w.values},
        {"n3", w.n3},     {"d", w.d},                 {"trunc_tol", w.trunc_tol},
        {"trunc_error", w.trunc_error},
    };
}

SolutionWindow window_from_json(const json& j) {
    require_keys(j, {"schema", "start", "values", "n3", "d", "trunc_tol", "trunc_error"}, {},
                 "window");
    SolutionWindow w;
    w.start = j.at("start").get<std::size_t>();
    w.values = j.at("values").get<std::vector<double>>();
    w.n3 = j.at("n3").get<std::size_t>();
    w.d = j.at("d").get<double>();
    w.trunc_tol = j.at("trunc_tol").get<double>();
    w.trunc_error = j.at("trunc_error").get<double>();
    if (w.values.empty()) throw io_error("window: no values");
    return w;
}

void write_window_csv(std::ostream& os, const SolutionWindow& w) {
    os << "n,x\n";
    char buf[64];
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", w.start + i, w.values[i]);
        os << buf;
    }
}

SolutionWindow read_window_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || (line != "n,x" && line != "n,x\r"))
        throw io_error("window CSV: expected header \"n,x\"");
    SolutionWindow w;
    bool first = true;
    std::size_t expected = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw io_error("window CSV: malformed row \"" + line + "\"");
        std::size_t n = 0;
        double x = 0.0;
        try {
            n = std::stoull(line.substr(0, comma));
            std::size_t pos = 0;
            const std::string xs = line.substr(comma + 1);
            x = std::stod(xs, &pos);
            if (pos != xs.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw io_error("window CSV: malformed row \"" + line + "\"");
        }
        if (first) {
            w.start = n;
            first = false;
        } else if (n != expected) {
            throw io_error("window CSV: indices must be consecutive, saw " + std::to_string(n) +
                           " after " + std::to_string(expected - 1));
        }
        expected = n + 1;
        w.values.push_back(x);
    }
    if (w.values.empty()) throw io_error("window CSV: no rows");
    w.n3 = w.start;
    double scale = 0.0;
    for (double v : w.values) scale = std::max(scale, std::abs(v));
    w.d = scale;
    return w;
}

} // namespace ndeq
