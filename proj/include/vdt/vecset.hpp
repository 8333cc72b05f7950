#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "vdt/rng.hpp"

namespace vdt {

// Row-major float matrix; the storage format matches fvecs payloads.
struct VectorSet {
    std::size_t dim = 0;
    std::vector<float> data;

    VectorSet() = default;
    explicit VectorSet(std::size_t d) : dim(d) {}

    std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }

    std::span<const float> row(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }

    void push_back(std::span<const float> v) {
        if (v.size() != dim) throw std::invalid_argument("VectorSet: dimension mismatch");
        data.insert(data.end(), v.begin(), v.end());
    }
};

inline double squared_distance(std::span<const float> a, std::span<const float> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        acc += d * d;
    }
    return acc;
}

inline double squared_distance(std::span<const float> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - b[i];
        acc += d * d;
    }
    return acc;
}

// Gaussian-mixture corpus used when no fvecs file is supplied.
inline VectorSet synthetic_corpus(std::size_t count, std::size_t dim,
                                  std::size_t components, double spread,
                                  std::uint64_t seed) {
    if (count == 0 || dim == 0 || components == 0)
        throw std::invalid_argument("synthetic_corpus: count, dim, components must be positive");
    Rng rng(derive_stream(seed, 0x5eedc0de));
    std::vector<double> centers(components * dim);
    for (auto& c : centers) c = rng.uniform(-1.0, 1.0);
    VectorSet out(dim);
    out.data.reserve(count * dim);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t comp = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(components) - 1));
        for (std::size_t d = 0; d < dim; ++d) {
            out.data.push_back(static_cast<float>(centers[comp * dim + d] + spread * rng.gaussian()));
        }
    }
    return out;
}

}  // namespace vdt
