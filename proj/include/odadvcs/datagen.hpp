#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "odadvcs/types.hpp"

namespace odadvcs {

/// A ball-shaped normal cluster of radius R with anomalies scattered in the
/// shell [shell_min·R, shell_max·R] around it.
///
/// Directions are uniform on the sphere. By default radii are uniform on
/// [0, R] for normal points and on [shell_min·R, shell_max·R] for anomalies
/// (uniform in radius, not in volume, so normals concentrate toward the
/// center). RadialLaw::uniform_volume fills both regions uniformly instead.
enum class RadialLaw { uniform_radius, uniform_volume };

struct SyntheticSpec {
    std::size_t dim = 3;
    std::size_t normal_count = 200;
    std::size_t anomaly_count = 20;
    double radius = 1.0;
    double shell_min = 1.1;
    double shell_max = 3.0;
    std::uint64_t seed = 0;
    RadialLaw law = RadialLaw::uniform_radius;
    /// Added to every point; empty means the origin.
    std::vector<double> center;

    /// Throws InvalidSpec.
    void validate() const;
};

/// Normal points first, anomalies after. Bit-identical for identical specs:
/// the sampler avoids the implementation-defined <random> distributions, so
/// only the platform's libm (log/sin/cos/sqrt) can change the output.
LabeledDataset generate(const SyntheticSpec& spec);

/// Well-mixed 64-bit seed for trial `index` of a run started from `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Small portable generator (SplitMix64) with uniform and normal draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    /// Uniform on [0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box–Muller.
    double normal() noexcept;

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace odadvcs
