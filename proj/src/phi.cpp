#include "offdiag/phi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "offdiag/errors.hpp"

namespace offdiag {

PhiSpec PhiSpec::power(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("phi power: alpha must be > 0");
    PhiSpec s;
    s.kind = Kind::power;
    s.alpha = alpha;
    s.a = 1.0 + alpha;  // (xi p)^alpha = xi^{a-1} p^alpha exactly
    return s;
}

PhiSpec PhiSpec::log_like() {
    PhiSpec s;
    s.kind = Kind::log;
    s.a = 2.0;
    return s;
}

PhiSpec PhiSpec::product(std::vector<PhiSpec> factors) {
    if (factors.size() < 2)
        throw std::invalid_argument("phi product: needs at least two factors");
    double a = 1.0;
    for (const auto& f : factors) {
        if (f.kind == Kind::product)
            throw std::invalid_argument("phi product: nested products are not supported");
        a += f.a - 1.0;
    }
    PhiSpec s;
    s.kind = Kind::product;
    s.factors = std::move(factors);
    s.a = a;
    return s;
}

double phi_eval(const PhiSpec& spec, double p) {
    if (p < 1.0) throw std::invalid_argument("phi_eval: p must be >= 1");
    switch (spec.kind) {
        case PhiSpec::Kind::power:
            return std::pow(p, spec.alpha);
        case PhiSpec::Kind::log:
            return std::log(p + std::numbers::e - 1.0);
        case PhiSpec::Kind::product: {
            double v = 1.0;
            for (const auto& f : spec.factors) v *= phi_eval(f, p);
            return v;
        }
    }
    throw std::logic_error("phi_eval: unknown kind");
}

double phi1(const PhiSpec& spec, double p) { return p * phi_eval(spec, p); }

double phi_inverse(const PhiSpec& spec, double y, double tol, int max_doublings,
                   int max_bisections) {
    if (y < 1.0) throw std::invalid_argument("phi_inverse: y must be >= 1");
    if (tol <= 0.0) throw std::invalid_argument("phi_inverse: tol must be > 0");
    if (std::abs(y - 1.0) <= tol) return 1.0;

    double lo = 1.0, hi = 2.0;
    int doublings = 0;
    while (phi_eval(spec, hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > max_doublings)
            throw ConvergenceError("phi_inverse: bracket growth exhausted", hi);
    }
    double mid = lo;
    for (int it = 0; it < max_bisections; ++it) {
        mid = 0.5 * (lo + hi);
        const double v = phi_eval(spec, mid);
        if (std::abs(v - y) <= tol) return mid;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) return mid;
        (v < y ? lo : hi) = mid;
    }
    return mid;
}

ConditionBResult verify_condition_b(const PhiSpec& spec, double xi_max,
                                    double p_max, int n_samples) {
    if (xi_max < 1.0 || p_max < 1.0)
        throw std::invalid_argument("verify_condition_b: grid bounds must be >= 1");
    if (n_samples < 1) throw std::invalid_argument("verify_condition_b: n_samples must be >= 1");

    auto grid_point = [n_samples](double upper, int i) {
        if (n_samples == 1) return upper;
        return 1.0 + (upper - 1.0) * static_cast<double>(i) / (n_samples - 1);
    };

    ConditionBResult res;
    for (int i = 0; i < n_samples; ++i) {
        const double xi = grid_point(xi_max, i);
        for (int j = 0; j < n_samples; ++j) {
            const double p = grid_point(p_max, j);
            const double ratio = phi_eval(spec, xi * p) /
                                 (std::pow(xi, spec.a - 1.0) * phi_eval(spec, p));
            res.max_ratio = std::max(res.max_ratio, ratio);
        }
    }
    res.pass = res.max_ratio <= 1.0 + 1e-12;
    return res;
}

PhiSpec parse_phi_spec(const std::string& text) {
    auto parse_atom = [](const std::string& atom) -> PhiSpec {
        if (atom == "log") return PhiSpec::log_like();
        const std::string prefix = "power:";
        if (atom.rfind(prefix, 0) == 0) {
            const double alpha = std::stod(atom.substr(prefix.size()));
            return PhiSpec::power(alpha);
        }
        throw std::invalid_argument("unknown phi spec: " + atom);
    };

    const std::string product_prefix = "product:";
    if (text.rfind(product_prefix, 0) == 0) {
        std::vector<PhiSpec> factors;
        std::stringstream ss(text.substr(product_prefix.size()));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) factors.push_back(parse_atom(item));
        return PhiSpec::product(std::move(factors));
    }
    return parse_atom(text);
}

std::string phi_spec_name(const PhiSpec& spec) {
    switch (spec.kind) {
        case PhiSpec::Kind::power: {
            std::ostringstream os;
            os << "power:" << spec.alpha;
            return os.str();
        }
        case PhiSpec::Kind::log:
            return "log";
        case PhiSpec::Kind::product: {
            std::string name = "product:";
            for (std::size_t i = 0; i < spec.factors.size(); ++i) {
                if (i) name += ",";
                name += phi_spec_name(spec.factors[i]);
            }
            return name;
        }
    }
    return "?";
}

}  // namespace offdiag
