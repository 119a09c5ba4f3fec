#include "odadvcs/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace odadvcs {

std::uint64_t Rng::next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    do {
        u = uniform();
    } while (u == 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    Rng mix(base ^ (index * 0xd1b54a32d192ed03ULL));
    mix.next();
    return mix.next();
}

void SyntheticSpec::validate() const {
    if (dim < 2) {
        throw InvalidSpec("dim must be at least 2");
    }
    if (normal_count == 0) {
        throw InvalidSpec("normal_count must be at least 1");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidSpec("radius must be a finite positive number");
    }
    if (!(shell_min > 1.0) || !std::isfinite(shell_min)) {
        throw InvalidSpec("shell_min must exceed 1 so anomalies lie outside the normal ball");
    }
    if (!(shell_max > shell_min) || !std::isfinite(shell_max)) {
        throw InvalidSpec("shell_max must exceed shell_min");
    }
    if (!center.empty() && center.size() != dim) {
        throw InvalidSpec("center has " + std::to_string(center.size()) + " coordinates, expected " +
                          std::to_string(dim));
    }
    for (const double c : center) {
        if (!std::isfinite(c)) {
            throw InvalidSpec("center coordinates must be finite");
        }
    }
}

namespace {

double sample_radius(Rng& rng, RadialLaw law, std::size_t dim, double r_lo, double r_hi) {
    if (law == RadialLaw::uniform_radius) {
        return rng.uniform(r_lo, r_hi);
    }
    // Inverse CDF of r^dim on [r_lo, r_hi], clamped against round-off at the ends.
    const double d = static_cast<double>(dim);
    const double lo = std::pow(r_lo, d);
    const double hi = std::pow(r_hi, d);
    return std::clamp(std::pow(rng.uniform(lo, hi), 1.0 / d), r_lo, r_hi);
}

void sample_point(Rng& rng, RadialLaw law, std::size_t dim, double r_lo, double r_hi,
                  std::vector<double>& dir, std::vector<double>& out) {
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& v : dir) {
            v = rng.normal();
            norm2 += v * v;
        }
    } while (norm2 == 0.0);
    const double scale = sample_radius(rng, law, dim, r_lo, r_hi) / std::sqrt(norm2);
    for (std::size_t k = 0; k < dim; ++k) {
        out.push_back(dir[k] * scale);
    }
}

}  // namespace

LabeledDataset generate(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t total = spec.normal_count + spec.anomaly_count;
    std::vector<double> values;
    values.reserve(total * spec.dim);
    std::vector<double> dir(spec.dim);
    Rng rng(spec.seed);

    for (std::size_t i = 0; i < spec.normal_count; ++i) {
        sample_point(rng, spec.law, spec.dim, 0.0, spec.radius, dir, values);
    }
    for (std::size_t i = 0; i < spec.anomaly_count; ++i) {
        sample_point(rng, spec.law, spec.dim, spec.shell_min * spec.radius, spec.shell_max * spec.radius, dir,
                     values);
    }
    if (!spec.center.empty()) {
        for (std::size_t i = 0; i < total; ++i) {
            for (std::size_t k = 0; k < spec.dim; ++k) {
                values[i * spec.dim + k] += spec.center[k];
            }
        }
    }

    std::vector<bool> labels(total, false);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(spec.normal_count), labels.end(), true);
    return {Dataset(total, spec.dim, std::move(values)), std::move(labels)};
}

}  // namespace odadvcs
