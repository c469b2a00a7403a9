#include "wpl/torsionpair.hpp"

#include <algorithm>

namespace wpl {

namespace {

// q^m for a possibly negative exponent.
Rat q_power(unsigned long q, long long m) {
    return m >= 0 ? Rat(int_pow(Int(q), static_cast<unsigned long>(m)))
                  : Rat(Int(1), int_pow(Int(q), static_cast<unsigned long>(-m)));
}

DimVec add_dims(const DimVec& a, const DimVec& b) {
    DimVec out(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) out[v] = a[v] + b[v];
    return out;
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

}  // namespace

Side indec_side(const std::vector<unsigned>& p, const KClass& c) {
    if (c.is_zero()) throw std::invalid_argument("zero class has no side");
    const long long r = rank_of(c);
    if (r > 0) return Side::T;
    if (r < 0) return Side::FShift;
    const long long deg = degree_of(p, c);
    if (deg > 0) return Side::T;
    if (deg < 0) return Side::FShift;
    throw std::domain_error("unclassifiable class: rank and degree both vanish");
}

std::pair<DimVec, DimVec> split_dims(const Presentation& A, const ModuleLattice& L,
                                     const Representation& M, const EnumOptions& opt) {
    DimVec d1(M.dim.size(), 0), d2(M.dim.size(), 0);
    for (const Representation& X : decompose(A, M, opt)) {
        const Side side = indec_side(L.p, L.class_of_dim(signed_dims(X.dim)));
        DimVec& half = side == Side::FShift ? d1 : d2;
        for (std::size_t v = 0; v < X.dim.size(); ++v) half[v] += X.dim[v];
    }
    return {d1, d2};
}

std::map<DimVec, Rat> bigraded_volumes(const Presentation& A, const ModuleLattice& L,
                                       const DimVec& d, const EnumOptions& opt) {
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<std::map<DimVec, Int>> partial(workers);
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        auto* acc = &partial[w];
        return [&A, &L, &opt, acc](const Representation& M) {
            ++(*acc)[split_dims(A, L, M, opt).first];
        };
    });
    std::map<DimVec, Int> counts;
    for (const auto& part : partial)
        for (const auto& [d1, c] : part) counts[d1] += c;

    const Int g = gl_order(d, A.field->order());
    std::map<DimVec, Rat> out;
    for (const auto& [d1, c] : counts) out.emplace(d1, Rat(c, g));
    return out;
}

Rat bigraded_volume(const Presentation& A, const ModuleLattice& L, const DimVec& d1,
                    const DimVec& d2, const EnumOptions& opt) {
    const auto all = bigraded_volumes(A, L, add_dims(d1, d2), opt);
    const auto it = all.find(d1);
    return it == all.end() ? Rat(0) : it->second;
}

Rat stack_volume_pure(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                      Side side, const EnumOptions& opt) {
    const DimVec zero(d.size(), 0);
    const DimVec want = side == Side::T ? zero : d;  // shifted half of a pure module
    return bigraded_volume(A, L, want, side == Side::T ? d : zero, opt);
}

Rat nil_volume_pure(const Presentation& A, const ModuleLattice& L, const DimVec& d,
                    Side side, const EnumOptions& opt) {
    const Field& F = *A.field;
    const DimVec zero(d.size(), 0);
    const unsigned workers = std::max(1u, opt.workers);
    std::vector<Int> partial(workers, Int(0));
    const std::uint64_t span_cap = opt.span_cap;
    for_each_solution(A, d, opt, [&](unsigned w) -> SolutionFn {
        Int* acc = &partial[w];
        return [&A, &L, &F, &opt, &zero, side, acc, span_cap](const Representation& M) {
            const auto halves = split_dims(A, L, M, opt);
            const DimVec& off_side = side == Side::T ? halves.first : halves.second;
            if (off_side == zero) *acc += nilpotent_count(F, end_basis(A, M), span_cap);
        };
    });
    Int pairs = 0;
    for (const Int& c : partial) pairs += c;
    return Rat(pairs, gl_order(d, F.order()));
}

FactorizationReport check_factorization(const Presentation& A, const ModuleLattice& L,
                                        const DimVec& d, const EnumOptions& opt) {
    const unsigned long q = A.field->order();
    FactorizationReport report;
    report.dim = d;
    report.stack = stack_volume(A, d, opt);
    report.total = Rat(0);

    // Pure volumes per sub-dimension: all-shifted needs ambient s with the
    // split concentrated at d1 = s, all-sheaf the split at d1 = 0.
    const DimVec zero(d.size(), 0);
    std::map<DimVec, Rat> pure_shift, pure_sheaf;
    for_each_subdim(d, [&](const DimVec& s) {
        const auto vols = bigraded_volumes(A, L, s, opt);
        const auto atF = vols.find(s);
        const auto atT = vols.find(zero);
        pure_shift.emplace(s, atF == vols.end() ? Rat(0) : atF->second);
        pure_sheaf.emplace(s, atT == vols.end() ? Rat(0) : atT->second);
    });

    const auto ambient = bigraded_volumes(A, L, d, opt);
    bool all_ok = true;
    for_each_subdim(d, [&](const DimVec& d1) {
        DimVec d2(d.size());
        for (std::size_t v = 0; v < d.size(); ++v) d2[v] = d[v] - d1[v];

        FactorizationEntry entry;
        entry.d1 = d1;
        entry.d2 = d2;
        const auto it = ambient.find(d1);
        entry.volume = it == ambient.end() ? Rat(0) : it->second;
        // The splitting forces Ext^1(shifted part, sheaf part) = 0, so the
        // automorphism mismatch between M1 + M2 and the pair (M1, M2) is the
        // full Hom space from the shifted side to the sheaf side.
        const long long twist = L.euler_mod(signed_dims(d1), signed_dims(d2));
        entry.factored = q_power(q, -twist) * pure_shift.at(d1) * pure_sheaf.at(d2);
        entry.ok = entry.volume == entry.factored;

        all_ok = all_ok && entry.ok;
        report.total += entry.volume;
        report.entries.push_back(std::move(entry));
    });

    report.pass = all_ok && report.total == report.stack;
    return report;
}

}  // namespace wpl
