#include "micbench/norms.hpp"

#include <cmath>
#include <limits>

namespace micbench {

NormSpec NormSpec::schatten(double p) {
    if (!(p >= 1.0))  // rejects NaN too
        throw InvalidSpec("Schatten order must satisfy p >= 1, got " + display_number(p));
    return NormSpec{Kind::schatten, p, 1};
}

NormSpec NormSpec::ky_fan(int k) {
    if (k < 1) throw InvalidSpec("Ky Fan order must be >= 1, got " + std::to_string(k));
    return NormSpec{Kind::ky_fan, 2.0, k};
}

NormSpec NormSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw InvalidSpec("expected kind:order, got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string order = text.substr(colon + 1);
    try {
        if (kind == "schatten") {
            if (order == "inf") return schatten(std::numeric_limits<double>::infinity());
            return schatten(std::stod(order));
        }
        if (kind == "kyfan") return ky_fan(std::stoi(order));
    } catch (const std::logic_error&) {
        throw InvalidSpec("cannot parse order '" + order + "'");
    }
    throw InvalidSpec("unknown norm kind '" + kind + "'");
}

std::string NormSpec::to_string() const {
    if (kind == Kind::ky_fan) return "kyfan:" + std::to_string(k);
    if (std::isinf(p)) return "schatten:inf";
    const double r = std::round(p);
    if (r == p) return "schatten:" + std::to_string(static_cast<long long>(r));
    return "schatten:" + display_number(p);
}

double ui_norm_from_singular(const SortedVector& s, const NormSpec& spec) {
    const Eigen::Index n = s.size();
    if (spec.kind == NormSpec::Kind::ky_fan) {
        if (spec.k < 1 || spec.k > n)
            throw InvalidSpec("Ky Fan order " + std::to_string(spec.k) +
                              " out of range for order-" + std::to_string(n) + " matrix");
        return s.entries().head(spec.k).sum();
    }
    if (!(spec.p >= 1.0)) throw InvalidSpec("Schatten order must satisfy p >= 1");
    if (std::isinf(spec.p)) return n > 0 ? s[0] : 0.0;  // operator norm
    return std::pow(s.entries().array().pow(spec.p).sum(), 1.0 / spec.p);
}

double ui_norm(const RealMatrix& m, const NormSpec& spec) {
    return ui_norm_from_singular(singular_values(m), spec);
}

double ui_norm(const ComplexMatrix& m, const NormSpec& spec) {
    return ui_norm_from_singular(singular_values(m), spec);
}

double distance_from_identity(const PhiMatrix& phi, const NormSpec& spec) {
    const Eigen::Index n = phi.order();
    return ui_norm(RealMatrix(RealMatrix::Identity(n, n) - phi.matrix()), spec);
}

double theorem1_margin(const ReferenceProcess& proc, const NormSpec& spec) {
    return theorem1_margin(phi(proc), spec);
}

double theorem1_margin(const PhiMatrix& phi_of_proc, const NormSpec& spec) {
    const Eigen::Index d =
        static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(phi_of_proc.order()))));
    return distance_from_identity(phi_of_proc, spec) - distance_from_identity(phi_sic(d), spec);
}

std::vector<double> theorem1_margins(const PhiMatrix& phi_of_proc,
                                     const std::vector<NormSpec>& specs) {
    const Eigen::Index n = phi_of_proc.order();
    const Eigen::Index d =
        static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    const SortedVector s =
        singular_values(RealMatrix(RealMatrix::Identity(n, n) - phi_of_proc.matrix()));
    const SortedVector s_sic =
        singular_values(RealMatrix(RealMatrix::Identity(n, n) - phi_sic(d).matrix()));
    std::vector<double> out;
    out.reserve(specs.size());
    for (const auto& spec : specs)
        out.push_back(ui_norm_from_singular(s, spec) - ui_norm_from_singular(s_sic, spec));
    return out;
}

std::vector<NormSpec> standard_spec_family(Eigen::Index order) {
    std::vector<NormSpec> specs = {NormSpec::schatten(1.0), NormSpec::schatten(2.0),
                                   NormSpec::schatten(std::numeric_limits<double>::infinity())};
    for (Eigen::Index k = 1; k <= order; ++k) specs.push_back(NormSpec::ky_fan(static_cast<int>(k)));
    return specs;
}

}  // namespace micbench
