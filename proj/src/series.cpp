#include "wpl/series.hpp"

#include <algorithm>
#include <string>

namespace wpl {

namespace {

DimVec zero_like(const DimVec& bound) { return DimVec(bound.size(), 0); }

bool is_zero_vec(const DimVec& d) {
    return std::all_of(d.begin(), d.end(), [](unsigned v) { return v == 0; });
}

// Visits every componentwise sub-vector of d, in odometer order.
void for_each_subdim(const DimVec& d, const std::function<void(const DimVec&)>& fn) {
    DimVec s(d.size(), 0);
    for (;;) {
        fn(s);
        std::size_t v = 0;
        while (v < d.size() && s[v] == d[v]) s[v++] = 0;
        if (v == d.size()) return;
        ++s[v];
    }
}

// q^m for a possibly negative exponent.
Rat q_power(unsigned long q, long long m) {
    return m >= 0 ? Rat(int_pow(Int(q), static_cast<unsigned long>(m)))
                  : Rat(Int(1), int_pow(Int(q), static_cast<unsigned long>(-m)));
}

std::string dims_to_string(const DimVec& d) {
    std::string out = "(";
    for (std::size_t v = 0; v < d.size(); ++v) {
        if (v) out += ",";
        out += std::to_string(d[v]);
    }
    return out + ")";
}

void drop_zeros(GradedSeries& s) {
    std::erase_if(s.coeff, [](const auto& kv) { return kv.second == 0; });
}

// Total degree bounds the number of product terms that survive truncation.
unsigned degree_budget(const DimVec& bound) {
    unsigned k = 0;
    for (unsigned bv : bound) k += bv;
    return k;
}

}  // namespace

Rat GradedSeries::at(const DimVec& d) const {
    const auto it = coeff.find(d);
    return it == coeff.end() ? Rat(0) : it->second;
}

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b) {
    if (a.bound != b.bound) throw std::invalid_argument("series bounds differ");
    GradedSeries out;
    out.bound = a.bound;
    for (const auto& [da, ca] : a.coeff) {
        if (ca == 0) continue;
        for (const auto& [db, cb] : b.coeff) {
            if (cb == 0) continue;
            DimVec key(da.size());
            bool fits = true;
            for (std::size_t v = 0; v < da.size(); ++v) {
                key[v] = da[v] + db[v];
                if (key[v] > out.bound[v]) {
                    fits = false;
                    break;
                }
            }
            if (fits) out.coeff[key] += ca * cb;
        }
    }
    drop_zeros(out);
    return out;
}

GradedSeries series_exp(const GradedSeries& s) {
    if (s.at(zero_like(s.bound)) != 0)
        throw std::invalid_argument("series_exp needs constant term 0");
    GradedSeries out;
    out.bound = s.bound;
    out.coeff[zero_like(s.bound)] = 1;

    GradedSeries term = out;  // s^k / k!, accumulated
    for (unsigned k = 1; k <= degree_budget(s.bound); ++k) {
        term = series_mul(term, s);
        if (term.coeff.empty()) break;
        for (auto& [d, c] : term.coeff) c /= k;
        for (const auto& [d, c] : term.coeff) out.coeff[d] += c;
    }
    drop_zeros(out);
    return out;
}

GradedSeries series_log(const GradedSeries& s) {
    if (s.at(zero_like(s.bound)) != 1)
        throw std::invalid_argument("series_log needs constant term 1");
    GradedSeries u = s;  // s - 1
    u.coeff.erase(zero_like(s.bound));

    GradedSeries out;
    out.bound = s.bound;
    GradedSeries power;
    power.bound = s.bound;
    power.coeff[zero_like(s.bound)] = 1;
    for (unsigned k = 1; k <= degree_budget(s.bound); ++k) {
        power = series_mul(power, u);
        if (power.coeff.empty()) break;
        const int sign = k % 2 ? 1 : -1;
        for (const auto& [d, c] : power.coeff) out.coeff[d] += sign * c / k;
    }
    drop_zeros(out);
    return out;
}

NilExpReport nil_exp_check(const Presentation& A, const ModuleLattice& L, const DimVec& bound,
                           const EnumOptions& opt) {
    const unsigned long q = A.field->order();
    NilExpReport report;
    report.bound = bound;

    GradedSeries nil_t, nil_full, log_t, log_full;
    nil_t.bound = nil_full.bound = log_t.bound = log_full.bound = bound;

    for_each_subdim(bound, [&](const DimVec& d) {
        nil_t.coeff[d] = nil_volume_pure(A, L, d, Side::T, opt);
        nil_full.coeff[d] = nil_volume(A, d, opt);
        if (is_zero_vec(d)) return;

        // Predicted logarithm: each way of writing d = l * alpha contributes
        // A_alpha(q^l) / (l (q^l - 1)), with alpha counted over F_{q^l}.
        const unsigned top = *std::max_element(d.begin(), d.end());
        for (unsigned l = 1; l <= top; ++l) {
            DimVec alpha(d.size());
            bool divides = true;
            for (std::size_t v = 0; v < d.size(); ++v) {
                if (d[v] % l) {
                    divides = false;
                    break;
                }
                alpha[v] = d[v] / l;
            }
            if (!divides) continue;
            const Presentation Al = l == 1 ? A : extend_presentation(A, l);
            const Int count = count_abs_indec(Al, alpha, opt);
            if (count == 0) continue;
            const Rat contrib(count, Int(l) * (int_pow(Int(q), l) - 1));
            log_full.coeff[d] += contrib;
            if (indec_side(L.p, L.class_of_dim(signed_dims(alpha))) == Side::T)
                log_t.coeff[d] += contrib;
        }
    });

    const GradedSeries rhs_t = series_exp(log_t);
    const GradedSeries rhs_full = series_exp(log_full);

    report.pass = true;
    report.full_pass = true;
    for_each_subdim(bound, [&](const DimVec& d) {
        CoeffCheck t{d, nil_t.at(d), rhs_t.at(d)};
        t.ok = t.lhs == t.rhs;
        report.pass = report.pass && t.ok;
        report.torsion.push_back(std::move(t));

        CoeffCheck f{d, nil_full.at(d), rhs_full.at(d)};
        f.ok = f.lhs == f.rhs;
        report.full_pass = report.full_pass && f.ok;
        report.full.push_back(std::move(f));
    });
    return report;
}

std::map<DimVec, Int> recover_A_from_nil(const Presentation& A, const ModuleLattice& L,
                                         const DimVec& bound, const EnumOptions& opt) {
    const unsigned long q = A.field->order();
    GradedSeries nil_t;
    nil_t.bound = bound;
    for_each_subdim(bound,
                    [&](const DimVec& d) { nil_t.coeff[d] = nil_volume_pure(A, L, d, Side::T, opt); });
    const GradedSeries lg = series_log(nil_t);

    std::map<DimVec, Int> out;
    for_each_subdim(bound, [&](const DimVec& d) {
        if (is_zero_vec(d)) return;
        Rat val = lg.at(d);

        // Strip the scalings d = l * alpha, l >= 2; their counts live over
        // F_{q^l} and come from the same inversion run there.
        const unsigned top = *std::max_element(d.begin(), d.end());
        for (unsigned l = 2; l <= top; ++l) {
            DimVec alpha(d.size());
            bool divides = true;
            for (std::size_t v = 0; v < d.size(); ++v) {
                if (d[v] % l) {
                    divides = false;
                    break;
                }
                alpha[v] = d[v] / l;
            }
            if (!divides) continue;
            const Presentation Al = extend_presentation(A, l);
            const auto sub = recover_A_from_nil(Al, module_lattice(Al), alpha, opt);
            val -= Rat(sub.at(alpha), Int(l) * (int_pow(Int(q), l) - 1));
        }

        val *= Int(q) - 1;
        if (rat_den(val) != 1)
            throw std::logic_error("recovered count at " + dims_to_string(d) +
                                   " is not an integer: " + rat_to_string(val));
        out[d] = rat_num(val);
    });
    return out;
}

long long rank_r(const std::vector<unsigned>& p, const std::vector<KClass>& parts) {
    long long acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        acc -= static_cast<long long>(i) * euler(p, parts[i], parts[i]);
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            acc -= static_cast<long long>(i + 1) * sym(p, parts[i], parts[j]);
            acc += euler(p, parts[i], parts[j]);
        }
    }
    return acc;
}

StratumReport stratum_check(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                            const JordanType& type, const EnumOptions& opt) {
    const Field& F = *A.field;
    const unsigned long q = F.order();
    const DimVec zero(d.size(), 0);

    JordanType parts = type;
    for (const auto& part : parts)
        if (part.size() != d.size())
            throw std::invalid_argument("Jordan part has the wrong vertex count");
    while (!parts.empty() && is_zero_vec(parts.back())) parts.pop_back();

    DimVec weighted(d.size(), 0);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t v = 0; v < d.size(); ++v) weighted[v] += unsigned(i + 1) * parts[i][v];
    if (weighted != d)
        throw std::invalid_argument("Jordan type does not add up to the dimension vector");

    StratumReport report;
    report.dim = d;
    report.type = parts;
    if (parts.empty()) {  // zero module: one empty chain, one empty pair
        report.lhs = report.chains = report.rhs = Rat(1);
        report.pass = true;
        return report;
    }

    std::vector<KClass> classes;
    classes.reserve(parts.size());
    for (const auto& part : parts) classes.push_back(L.class_of_dim(signed_dims(part)));
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (!classes[i].is_zero() && indec_side(L.p, classes[i]) != Side::T)
            throw std::invalid_argument("Jordan part " + std::to_string(i + 1) +
                                        " lies outside the sheaf cone");

    report.rank = rank_r(L.p, classes);

    // Left side: pairs (M, theta) with M entirely in the sheaf cone and
    // theta nilpotent of the given type.
    const std::uint64_t span_cap = opt.span_cap;
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<Int> partial(workers, Int(0));
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        Int* acc = &partial[w];
        return [&, acc](const Representation& M) {
            if (split_dims(A, L, M, opt).first != zero) return;
            const EndRing E = end_basis(A, M);
            const std::uint64_t size = span_size_checked(F, E.dim, span_cap);
            for (std::uint64_t i = 0; i < size; ++i) {
                const Endo theta = span_element(F, E, i);
                if (!endo_is_nilpotent(F, theta)) continue;
                if (jordan_type(A, M, theta) == parts) ++*acc;
            }
        };
    });
    Int stratum = 0;
    for (const Int& c : partial) stratum += c;
    report.lhs = Rat(stratum, gl_order(d, q));

    // Right side: chains G_1 ->> ... ->> G_s of sheaf-cone modules with
    // dim G_i = sum_{j >= i} alpha_j, every map surjective at every vertex.
    const std::size_t s = parts.size();
    std::vector<DimVec> level_dims(s, DimVec(d.size(), 0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j)
            for (std::size_t v = 0; v < d.size(); ++v) level_dims[i][v] += parts[j][v];

    std::vector<std::vector<Representation>> levels(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::vector<Representation>> buckets(workers);
        for_each_solution(A, level_dims[i], opt, [&](unsigned w) -> SolutionFn {
            auto* bucket = &buckets[w];
            return [&, bucket](const Representation& M) {
                if (split_dims(A, L, M, opt).first == zero) bucket->push_back(M);
            };
        });
        for (auto& bucket : buckets)
            levels[i].insert(levels[i].end(), std::make_move_iterator(bucket.begin()),
                             std::make_move_iterator(bucket.end()));
    }

    std::vector<Int> weight(levels[s - 1].size(), Int(1));
    for (std::size_t i = s - 1; i-- > 0;) {
        std::vector<Int> next(levels[i].size(), Int(0));
        for (std::size_t a = 0; a < levels[i].size(); ++a)
            for (std::size_t b = 0; b < levels[i + 1].size(); ++b) {
                if (weight[b] == 0) continue;
                const std::uint64_t surj =
                    surjective_hom_count(A, levels[i][a], levels[i + 1][b], span_cap);
                if (surj) next[a] += Int(surj) * weight[b];
            }
        weight = std::move(next);
    }
    Int chain_count = 0;
    for (const Int& w : weight) chain_count += w;
    Int denom = 1;
    for (const DimVec& dim : level_dims) denom *= gl_order(dim, q);
    report.chains = Rat(chain_count, denom);

    report.rhs = q_power(q, report.rank) * report.chains;
    report.pass = report.lhs == report.rhs;
    return report;
}

}  // namespace wpl
