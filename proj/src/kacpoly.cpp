#include "wpl/kacpoly.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace wpl {

namespace {

// Monomial coefficients (lowest first) of the Lagrange interpolant through
// the first `k` samples.
std::vector<Rat> fit_prefix(const std::vector<KacSample>& samples, std::size_t k) {
    std::vector<Rat> acc(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
        // v_i * prod_{j != i} (x - q_j) / (q_i - q_j)
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            basis.push_back(Rat(0));
            for (std::size_t c = basis.size() - 1; c > 0; --c)
                basis[c] = basis[c - 1] - Rat(samples[j].q) * basis[c];
            basis[0] = -Rat(samples[j].q) * basis[0];
            denom *= Rat(samples[i].q) - Rat(samples[j].q);
        }
        const Rat scale = Rat(samples[i].value) / denom;
        for (std::size_t c = 0; c < basis.size(); ++c) acc[c] += scale * basis[c];
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

Rat eval_rat(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat out(0);
    for (std::size_t c = coeffs.size(); c-- > 0;) out = out * x + coeffs[c];
    return out;
}

Presentation build_presentation(AlgebraKind kind, const std::vector<unsigned>& p,
                                const std::vector<long long>& lambda, FieldPtr field) {
    std::vector<Fel> mapped;
    mapped.reserve(lambda.size());
    for (long long v : lambda) mapped.push_back(field->from_int(v));
    return kind == AlgebraKind::canonical ? canonical_presentation(field, p, mapped)
                                          : squid_presentation(field, p, mapped);
}

}  // namespace

Int KacPolynomial::eval(const Int& x) const {
    Int out = 0;
    for (std::size_t c = coeffs.size(); c-- > 0;) out = out * x + coeffs[c];
    return out;
}

unsigned KacPolynomial::degree() const {
    return coeffs.empty() ? 0 : unsigned(coeffs.size() - 1);
}

bool KacPolynomial::nonnegative() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& c) { return c >= 0; });
}

std::pair<unsigned, unsigned> parse_prime_power(unsigned long q) {
    if (q < 2) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    unsigned long base = q;
    for (unsigned long f = 2; f * f <= base; ++f)
        if (base % f == 0) {
            base = f;
            break;
        }
    unsigned degree = 0;
    unsigned long rest = q;
    while (rest % base == 0) {
        rest /= base;
        ++degree;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return {unsigned(base), degree};
}

std::vector<KacSample> sample_counts(AlgebraKind kind, const std::vector<unsigned>& p,
                                     const std::vector<long long>& lambda, const DimVec& d,
                                     const std::vector<unsigned long>& qs,
                                     const EnumOptions& opt) {
    std::vector<KacSample> out;
    out.reserve(qs.size());
    for (unsigned long q : qs) {
        const auto [ch, deg] = parse_prime_power(q);
        const Presentation A = build_presentation(kind, p, lambda, make_field(ch, deg));
        out.push_back({q, count_abs_indec(A, d, opt), SampleSource::direct_count});
    }
    return out;
}

KacPolynomial interpolate(AlgebraKind kind, const std::vector<unsigned>& p, const DimVec& dim,
                          const std::vector<KacSample>& samples) {
    std::set<unsigned long> seen;
    for (const KacSample& s : samples)
        if (!seen.insert(s.q).second)
            throw std::invalid_argument("duplicate sample at q = " + std::to_string(s.q));
    if (samples.size() < 3)
        throw std::invalid_argument("underdetermined: need at least two surplus samples");

    for (std::size_t k = 1; k + 2 <= samples.size(); ++k) {
        const std::vector<Rat> candidate = fit_prefix(samples, k);
        bool confirmed = true;
        for (std::size_t j = k; j < samples.size(); ++j)
            if (eval_rat(candidate, Rat(samples[j].q)) != Rat(samples[j].value)) {
                confirmed = false;
                break;
            }
        if (!confirmed) continue;

        KacPolynomial poly;
        poly.kind = kind;
        poly.p = p;
        poly.dim = dim;
        poly.coeffs.reserve(candidate.size());
        for (const Rat& c : candidate) {
            if (rat_den(c) != 1)
                throw std::logic_error("integrality violation: coefficient " + rat_to_string(c));
            poly.coeffs.push_back(rat_num(c));
        }
        return poly;
    }
    throw std::invalid_argument(
        "underdetermined: interpolation never stabilized with two surplus samples");
}

ExtensionReport verify_extension(const KacPolynomial& poly, const Presentation& A, unsigned ext,
                                 const EnumOptions& opt) {
    ExtensionReport report;
    report.q = A.field->order();
    report.ext = ext;
    report.predicted = poly.eval(int_pow(Int(report.q), ext));
    const Presentation Al = ext == 1 ? A : extend_presentation(A, ext);
    report.counted = count_abs_indec(Al, poly.dim, opt);
    report.pass = report.predicted == report.counted;
    return report;
}

LambdaReport verify_lambda_independence(AlgebraKind kind, const std::vector<unsigned>& p,
                                        const DimVec& d, FieldPtr field,
                                        const std::vector<std::vector<Fel>>& lambda_sets,
                                        const EnumOptions& opt) {
    LambdaReport report;
    report.lambda_sets = lambda_sets;
    for (const auto& lambda : lambda_sets) {
        const Presentation A = kind == AlgebraKind::canonical
                                   ? canonical_presentation(field, p, lambda)
                                   : squid_presentation(field, p, lambda);
        report.counts.push_back(count_abs_indec(A, d, opt));
    }
    report.pass = std::all_of(report.counts.begin(), report.counts.end(),
                              [&](const Int& c) { return c == report.counts.front(); });
    return report;
}

}  // namespace wpl
