#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "becpol/errors.hpp"

namespace becpol {

// One pairing of the 2n interaction vertices of an order-n self-energy term.
// Arcs are stored canonically: (open, close) with open < close, sorted by the
// opening vertex. Vertices are numbered 1..2n left to right in time order.
using Arc = std::pair<int, int>;

struct Pairing {
    int order = 0;          // n
    std::vector<Arc> arcs;  // exactly n arcs
};

// L_n: diagrams with distinguishable vertex labels, (2n)!/2^n
// D_n: pairings (phonon-line topologies), (2n-1)!!
// R_n: irreducible pairings (no free-propagator cut), by enumeration
struct DiagramCounts {
    std::uint64_t total_labeled;
    std::uint64_t pairings;
    std::uint64_t irreducible;
};

// all (2n-1)!! pairings in lexicographic order of their canonical arc lists;
// n must be in [1, 8] (enumeration cost and count overflow guard)
std::vector<Pairing> enumerate_pairings(int n);

// a pairing is irreducible when every gap s between consecutive vertices
// (s = 1 .. 2n-1) is spanned by some arc with open <= s < close
bool is_irreducible(const Pairing& p);

DiagramCounts diagram_counts(int n);

// Time-ordered segment structure: between consecutive vertices there are
// 2n-1 segments; open_arcs[s] lists (by index into Pairing::arcs) the arcs
// crossing segment s.  The physical denominator of a segment depends on the
// *set* of open arcs, not additively on the lines, so evaluation takes a
// callback from that set to a complex denominator.
struct SegmentDescriptor {
    int order = 0;
    std::vector<std::vector<int>> open_arcs;  // size 2n-1, each sorted
};

SegmentDescriptor to_segments(const Pairing& p);

// product over segments of 1 / D_s where D_s = denom(open_arcs[s]);
// signs and vertex weights are the integrand assembler's business
using SegmentDenom = std::function<std::complex<double>(const std::vector<int>&)>;
std::complex<double> evaluate_descriptor(const SegmentDescriptor& seg, const SegmentDenom& denom);

} // namespace becpol
