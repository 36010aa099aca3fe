#ifndef ENTLAB_TOOLS_SELFTEST_HPP
#define ENTLAB_TOOLS_SELFTEST_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "entlab/linalg.hpp"

namespace entlab::selftest {

/// Fault hooks for exercising the suite's ability to catch a broken build.
enum class Fault { None, SpinFlip };

struct Options {
    bool fast = false;
    Fault fault = Fault::None;
    /// Directory for emitted datasets; empty selects a per-process
    /// directory under the system temp path.
    std::string scratch_dir;
    std::uint64_t seed = 20250809;
    /// 0 runs every criterion; 1..9 runs just that one (criterion 9 needs
    /// 3 and 7 to have run first and implies them).
    int only_criterion = 0;
};

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Report {
    std::vector<CriterionResult> criteria;
    bool all_passed() const;
};

/// Runs the full acceptance suite, printing one pass/fail line per
/// criterion to `log`.
Report run(const Options& opts, std::ostream& log);

/// Independent eigenvalue route for cross-checking the Jacobi solver:
/// characteristic-polynomial coefficients by trace recursion, roots by
/// Durand-Kerner, returned sorted descending.
std::array<double, 4> charpoly_eigenvalues(const ComplexMatrix& h);

} // namespace entlab::selftest

#endif
