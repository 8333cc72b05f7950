#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vdt/vecset.hpp"

namespace vdt {

// Ordered set of expansion factors (per-list scan depths).
struct ConfigGrid {
    std::vector<int> values;

    std::size_t size() const { return values.size(); }
    int value(std::size_t i) const { return values[i]; }
    int max_value() const { return values.empty() ? 0 : values.back(); }
    std::size_t median_index() const { return (values.size() - 1) / 2; }

    void validate(std::size_t dataset_size) const;
};

struct RetrievalResult {
    std::vector<std::uint32_t> ids;
    std::vector<double> distances;  // nondecreasing, squared Euclidean metric applied as sqrt at the end
    std::int64_t scanned = 0;       // candidate distance evaluations performed
    bool shortfall = false;         // true when fewer than k candidates were reachable
};

struct KmeansParams {
    int nlist = 16;
    std::uint64_t seed = 1;
    int max_iters = 50;
    double tol = 1e-6;  // relative centroid movement
};

// Minimal inverted-file index. Centroids come from seeded Lloyd iterations;
// posting lists are sorted by ascending distance to the owning centroid so a
// bounded scan depth prefers cluster cores.
class IvfIndex {
public:
    static IvfIndex build(const VectorSet& dataset, const KmeansParams& params);

    int assign(std::span<const float> v) const;

    RetrievalResult search(std::span<const float> v, int k, int depth, int nprobe) const;

    std::size_t nlist() const { return posting_.size(); }
    std::size_t dim() const { return dataset_.dim; }
    std::size_t dataset_size() const { return dataset_.size(); }
    const VectorSet& dataset() const { return dataset_; }
    std::span<const double> centroid(std::size_t c) const {
        return {centroids_.data() + c * dataset_.dim, dataset_.dim};
    }
    const std::vector<std::uint32_t>& posting_list(std::size_t c) const { return posting_[c]; }
    std::size_t max_list_length() const;

private:
    VectorSet dataset_;
    std::vector<double> centroids_;  // nlist x dim
    std::vector<std::vector<std::uint32_t>> posting_;
};

// Definitional check of the ANN contract: every returned distance within
// factor c of the exact nearest distance, evaluated against the full dataset.
bool check_ann_contract(const RetrievalResult& result, std::span<const float> v, double c,
                        const VectorSet& dataset);

}  // namespace vdt
