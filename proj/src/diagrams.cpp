#include "becpol/diagrams.hpp"

#include <algorithm>
#include <string>

namespace becpol {

namespace {

// pair the smallest unpaired vertex with each later one in increasing order;
// this emits canonical arc lists in lexicographic order
void emit(int two_n, std::vector<int>& free_v, std::vector<Arc>& acc,
          std::vector<Pairing>& out) {
    if (free_v.empty()) {
        out.push_back({two_n / 2, acc});
        return;
    }
    const int a = free_v.front();
    for (std::size_t i = 1; i < free_v.size(); ++i) {
        const int b = free_v[i];
        std::vector<int> rest;
        rest.reserve(free_v.size() - 2);
        for (std::size_t j = 1; j < free_v.size(); ++j)
            if (j != i) rest.push_back(free_v[j]);
        acc.push_back({a, b});
        emit(two_n, rest, acc, out);
        acc.pop_back();
    }
}

std::uint64_t double_factorial_odd(int n) {  // (2n-1)!!
    std::uint64_t r = 1;
    for (int k = 3; k <= 2 * n - 1; k += 2) r *= static_cast<std::uint64_t>(k);
    return r;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
    return r;
}

void check_order(int n) {
    if (n < 1 || n > 8)
        throw InputError("diagram order must be in [1, 8], got " + std::to_string(n));
}

} // namespace

std::vector<Pairing> enumerate_pairings(int n) {
    check_order(n);
    std::vector<int> verts(2 * n);
    for (int i = 0; i < 2 * n; ++i) verts[i] = i + 1;
    std::vector<Pairing> out;
    out.reserve(double_factorial_odd(n));
    std::vector<Arc> acc;
    emit(2 * n, verts, acc, out);
    return out;
}

bool is_irreducible(const Pairing& p) {
    const int two_n = 2 * p.order;
    for (int s = 1; s < two_n; ++s) {
        bool spanned = false;
        for (const auto& [i, j] : p.arcs)
            if (i <= s && s < j) { spanned = true; break; }
        if (!spanned) return false;
    }
    return true;
}

DiagramCounts diagram_counts(int n) {
    check_order(n);
    DiagramCounts c{};
    c.pairings = double_factorial_odd(n);
    c.total_labeled = c.pairings * factorial(n);  // (2n)!/2^n = (2n-1)!! n!
    std::uint64_t irr = 0;
    for (const auto& p : enumerate_pairings(n))
        if (is_irreducible(p)) ++irr;
    c.irreducible = irr;
    return c;
}

SegmentDescriptor to_segments(const Pairing& p) {
    SegmentDescriptor seg;
    seg.order = p.order;
    seg.open_arcs.resize(2 * p.order - 1);
    for (int s = 1; s < 2 * p.order; ++s) {
        auto& open = seg.open_arcs[s - 1];
        for (std::size_t a = 0; a < p.arcs.size(); ++a)
            if (p.arcs[a].first <= s && s < p.arcs[a].second)
                open.push_back(static_cast<int>(a));
        std::sort(open.begin(), open.end());
    }
    return seg;
}

std::complex<double> evaluate_descriptor(const SegmentDescriptor& seg, const SegmentDenom& denom) {
    std::complex<double> prod{1.0, 0.0};
    for (const auto& open : seg.open_arcs) prod /= denom(open);
    return prod;
}

} // namespace becpol
