#pragma once

#include "loopkit/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopkit {

using BigInt = boost::multiprecision::cpp_int;

// All non-crossing perfect matchings of 1..2N in lexicographic pair order.
// Guarded at N <= 16.
std::vector<Matching> enumerate_matchings(int N);
void for_each_matching(int N, const std::function<void(const Matching&)>& f);

BigInt catalan(int n);
BigInt binomial(int n, int k);

// ------------------------------------------------------------ geometry

// Boundary point position with both coordinates doubled so they stay
// integral: top edge y = 2 n_v, bottom y = 0, left x = 0, right x = 2 n_h.
struct Point2 {
    int x;
    int y;
    bool operator==(const Point2&) const = default;
};
Point2 boundary_point(const Dims& d, int index);

enum class TupleClass { horizontal, vertical, diagonal };
TupleClass tuple_class(const Dims& d, const Pair& p);

// Cut orientation. A vertical cut is the line x = i (1 <= i < n_h); a
// horizontal cut is y = i (1 <= i < n_v).
enum class Cut { vertical, horizontal };

// Number of tuples of the matching class that goes through the cut
// (horizontal tuples for vertical cuts, vertical tuples for horizontal cuts).
int flow(const Matching& p, const Dims& d, int cut, Cut orientation);

// Number of chords whose endpoints lie on opposite sides of the cut,
// regardless of class.
int cut_crossings(const Matching& p, const Dims& d, int cut, Cut orientation);

struct Violation {
    Cut orientation;
    int cut;
    int flow;
    int threshold;  // forbidden when flow >= threshold
    std::string str() const;
};

// First cut whose flow reaches its threshold (n_v + 1 for vertical cuts,
// n_h + 1 for horizontal ones).
std::optional<Violation> find_violation(const Matching& p, const Dims& d);
std::optional<Violation> find_violation(const Matching& p, const Dims& d, Cut orientation);
bool is_allowed(const Matching& p, const Dims& d);

class ForbiddenMatching : public std::invalid_argument {
public:
    ForbiddenMatching(const Matching& p, const Violation& v);
    Violation violation;
};

// ------------------------------------------------------------ Dyck paths

using DyckPath = std::vector<int>;  // +1 / -1 steps

enum class Direction { h, v };

bool is_dyck(const DyckPath& path);
std::string dyck_str(const DyckPath& path);  // "UUDD..."

struct ReadingOrder {
    std::vector<int> points;        // boundary indices in reading order
    std::vector<bool> to_front;     // whether the point joins the front end
};
ReadingOrder reading_order(const Dims& d, Direction dir);

DyckPath dyck_map(const Matching& p, const Dims& d, Direction dir);
// Throws std::invalid_argument for an invalid path.
Matching dyck_unmap(const DyckPath& path, const Dims& d, Direction dir);

// Dyck paths of half-length n with every height <= hmax.
BigInt dyck_height_count_transfer(int n, int hmax);
BigInt dyck_height_count_reflection(int n, int hmax);
BigInt dyck_height_count_continued_fraction(int n, int hmax);
inline BigInt dyck_height_count(int n, int hmax) { return dyck_height_count_transfer(n, hmax); }

// ------------------------------------------------------------ counting

enum class CountStrategy { brute, dp, closed_forms };
std::string to_string(CountStrategy s);
CountStrategy parse_strategy(const std::string& s);

// A printed closed-form reading, compared with the authoritative count.
struct ClosedFormRow {
    std::string name;
    double value;       // as evaluated; may be non-integral
    double deviation;   // value - authoritative
};

struct CountResult {
    BigInt value;
    CountStrategy strategy;
    Dims dims;
    std::vector<ClosedFormRow> closed_forms;  // closed_forms only
};

// Paths of length 2N whose height is <= limit at steps limit + 2k,
// k = 1 .. other - 1: the allowed count in one cut direction.
BigInt cut_limited_paths(int limit, int other);

// Allowed matchings in one direction only (no violating cut of that kind).
BigInt count_allowed_direction(const Dims& d, Cut orientation);
// Same, read from the global maximum of the Dyck path instead of the cut
// steps.
BigInt count_global_height_direction(const Dims& d, Cut orientation);

BigInt count_allowed_brute(const Dims& d);  // N <= 14
BigInt count_allowed_dp(const Dims& d);
CountResult count_allowed(const Dims& d, CountStrategy strategy);

struct ClosedFormReport {
    Dims dims;
    BigInt dp;
    std::optional<BigInt> brute;
    BigInt direction_v;           // cut-step reading
    BigInt direction_h;
    BigInt global_height_v;       // global-height reading
    BigInt global_height_h;
    std::vector<ClosedFormRow> rows;
};
ClosedFormReport closed_form_report(const Dims& d);

struct AsymptoticRow {
    int N;
    int n_h;
    int n_v;
    BigInt count;
    double ratio;  // count * N^{3/2} / 4^N
};
// n_h = N / alpha, n_v = N - n_h; entries where that is not integral are
// skipped.
std::vector<AsymptoticRow> asymptotic_ratio(double alpha, const std::vector<int>& Ns);
double k_closed_form(double alpha);
double catalan_ratio(int N);  // C_N * N^{3/2} / 4^N

// Zero-Renyi scaling of square regions: with L = 4 l the perimeter,
// corrected(l) = log2 N(l, l) - L + 3/2 log2(L / 2).
struct EntropyRow {
    int ell;
    int perimeter;
    BigInt count;
    double log2_count;
    double corrected;
    double increment;  // corrected(l) - corrected(l - 1); 0 for the first row
};

struct EntropyScaling {
    std::vector<EntropyRow> rows;
    int monotone_from = 0;       // smallest l after which |increment| never grows
    double final_increment = 0;
    // Least squares of log2 N - L = c - gamma log2(L / 2) + a / L over
    // l >= fit_from.
    double exponent = 0;
    double exponent_two_point = 0;  // from l_max / 2 and l_max alone
    int fit_from = 0;
};
EntropyScaling entropy_scaling(int ell_max, int fit_from = 16);

double log2_big(const BigInt& x);

// ------------------------------------------------------------ patterns

// Deterministic pattern realizing p. Throws ForbiddenMatching if p is not
// allowed and std::logic_error if the construction gets stuck.
LoopPattern canonical_pattern(const Matching& p, const Dims& d);

struct ExteriorFill {
    Dims torus;
    Dims hole;
    int hole_row;  // top-left tile of the hole
    int hole_col;
    LoopPattern tiles;          // torus pattern; hole tiles are 0
    std::vector<char> in_hole;  // per site
};

bool exterior_condition(const Dims& hole, const Dims& torus);

// Tiles the torus outside a hole so that the exterior joins hole boundary
// points exactly as p does. Throws std::invalid_argument when the size
// condition fails and std::logic_error if routing fails.
ExteriorFill fill_exterior(const Dims& hole, const Dims& torus, const Matching& p);

// Traces the punctured torus and returns the pairing of hole boundary points
// made by the exterior, plus the number of closed exterior loops.
struct ExteriorTrace {
    Matching pairing;
    int closed_loops = 0;
};
ExteriorTrace trace_exterior(const ExteriorFill& f);

} // namespace loopkit
