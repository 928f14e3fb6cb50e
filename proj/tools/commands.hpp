#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "descriptor.hpp"

namespace lightlike::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// "pmin:pmax:np,qmin:qmax:nq"; counts >= 2 and min < max.
struct GridSpec {
    Interval p{0.0, 0.0};
    int p_count = 0;
    Interval q{0.0, 0.0};
    int q_count = 0;
    double margin = kFamilyBoundaryMargin;

    double p_at(int i) const { return p.lo + (p.hi - p.lo) * i / (p_count - 1); }
    double q_at(int j) const { return q.lo + (q.hi - q.lo) * j / (q_count - 1); }
};

GridSpec parse_grid(std::string_view text, double margin = kFamilyBoundaryMargin);

/// 21 x 21 grid over a bounded window of the family's domain, kept `margin` (at least 1e-3) inside.
GridSpec default_grid(const FamilyDescriptor& family, double margin = kFamilyBoundaryMargin, int count = 21);

bool grid_point_inside(const FamilyDescriptor& family, Point2 at, double margin);

/// "%.17g".
std::string format_double(double v);

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Invariant checks for one family; `tol` replaces every tolerance when given.
std::vector<CheckResult> verify_family(const FamilyDescriptor& family, std::optional<double> tol = std::nullopt);
/// Checks of phi^{-1} and of the A_3 group that do not depend on a family.
std::vector<CheckResult> verify_global(std::optional<double> tol = std::nullopt);
/// The descriptors used by `verify all`.
std::vector<FamilyDescriptor> default_families();

struct TableRow {
    std::string type;
    bool entire = false;
    std::string causal;
    std::string complete;
};
std::vector<TableRow> compute_table();

/// Entry point shared by the executable and the tests; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lightlike::cli
