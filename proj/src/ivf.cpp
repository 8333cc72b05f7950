#include "vdt/ivf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vdt/rng.hpp"

namespace vdt {

void ConfigGrid::validate(std::size_t dataset_size) const {
    if (values.empty()) throw std::invalid_argument("config grid: empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1) throw std::invalid_argument("config grid: values must be positive");
        if (i > 0 && values[i] <= values[i - 1])
            throw std::invalid_argument("config grid: values must be strictly increasing");
    }
    if (dataset_size > 0 && static_cast<std::size_t>(values.back()) > dataset_size)
        throw std::invalid_argument("config grid: max value exceeds dataset size");
}

namespace {

int nearest_centroid(std::span<const float> v, const std::vector<double>& centroids,
                     std::size_t nlist, std::size_t dim) {
    int best = 0;
    double best_d = squared_distance(v, std::span<const double>(centroids.data(), dim));
    for (std::size_t c = 1; c < nlist; ++c) {
        const double d =
            squared_distance(v, std::span<const double>(centroids.data() + c * dim, dim));
        if (d < best_d) {  // strict: ties keep the lowest centroid id
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace

IvfIndex IvfIndex::build(const VectorSet& dataset, const KmeansParams& params) {
    const std::size_t n = dataset.size();
    const std::size_t dim = dataset.dim;
    if (n == 0) throw std::invalid_argument("ivf build: empty dataset");
    if (params.nlist < 1 || static_cast<std::size_t>(params.nlist) > n)
        throw std::invalid_argument("ivf build: nlist must be in [1, dataset size]");

    const auto nlist = static_cast<std::size_t>(params.nlist);
    IvfIndex index;
    index.dataset_ = dataset;
    index.centroids_.assign(nlist * dim, 0.0);

    // Seeded init: sample nlist distinct points.
    Rng rng(derive_stream(params.seed, 0x1f1f));
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = 0; i < nlist; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1));
        std::swap(perm[i], perm[j]);
        const auto row = dataset.row(perm[i]);
        for (std::size_t d = 0; d < dim; ++d) index.centroids_[i * dim + d] = row[d];
    }

    // Lloyd iterations until the relative centroid movement drops below tol.
    std::vector<int> assign_of(n, 0);
    std::vector<double> sums(nlist * dim);
    std::vector<std::int64_t> counts(nlist);
    for (int iter = 0; iter < params.max_iters; ++iter) {
        for (std::size_t i = 0; i < n; ++i)
            assign_of[i] = nearest_centroid(dataset.row(i), index.centroids_, nlist, dim);

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = dataset.row(i);
            const auto c = static_cast<std::size_t>(assign_of[i]);
            counts[c] += 1;
            for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += row[d];
        }

        double movement = 0.0;
        double scale = 0.0;
        for (std::size_t c = 0; c < nlist; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            for (std::size_t d = 0; d < dim; ++d) {
                const double updated = sums[c * dim + d] / static_cast<double>(counts[c]);
                const double delta = updated - index.centroids_[c * dim + d];
                movement += delta * delta;
                scale += updated * updated;
                index.centroids_[c * dim + d] = updated;
            }
        }
        if (movement <= params.tol * params.tol * std::max(scale, 1e-30)) break;
    }

    // Final assignment pass establishes the disjoint-cover invariant against
    // the converged centroids, then orders each list by distance to its owner.
    index.posting_.assign(nlist, {});
    std::vector<double> dist_to_owner(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = nearest_centroid(dataset.row(i), index.centroids_, nlist, dim);
        index.posting_[static_cast<std::size_t>(c)].push_back(static_cast<std::uint32_t>(i));
        dist_to_owner[i] = squared_distance(
            dataset.row(i),
            std::span<const double>(index.centroids_.data() + static_cast<std::size_t>(c) * dim, dim));
    }
    for (auto& list : index.posting_) {
        std::sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (dist_to_owner[a] != dist_to_owner[b]) return dist_to_owner[a] < dist_to_owner[b];
            return a < b;
        });
    }
    return index;
}

int IvfIndex::assign(std::span<const float> v) const {
    if (v.size() != dataset_.dim) throw std::invalid_argument("ivf assign: dimension mismatch");
    return nearest_centroid(v, centroids_, posting_.size(), dataset_.dim);
}

std::size_t IvfIndex::max_list_length() const {
    std::size_t m = 0;
    for (const auto& list : posting_) m = std::max(m, list.size());
    return m;
}

RetrievalResult IvfIndex::search(std::span<const float> v, int k, int depth, int nprobe) const {
    if (v.size() != dataset_.dim) throw std::invalid_argument("ivf search: dimension mismatch");
    if (k < 1) throw std::invalid_argument("ivf search: k must be positive");
    if (depth < 1) throw std::invalid_argument("ivf search: depth must be positive");
    if (nprobe < 1 || static_cast<std::size_t>(nprobe) > posting_.size())
        throw std::invalid_argument("ivf search: nprobe out of range");

    const std::size_t dim = dataset_.dim;
    const std::size_t nlist = posting_.size();

    // Rank posting lists by centroid distance, ties to the lowest id.
    std::vector<std::pair<double, std::uint32_t>> order(nlist);
    for (std::size_t c = 0; c < nlist; ++c) {
        order[c] = {squared_distance(v, std::span<const double>(centroids_.data() + c * dim, dim)),
                    static_cast<std::uint32_t>(c)};
    }
    std::sort(order.begin(), order.end());

    std::vector<std::pair<double, std::uint32_t>> candidates;
    candidates.reserve(static_cast<std::size_t>(nprobe) * static_cast<std::size_t>(depth));
    std::int64_t scanned = 0;
    for (int p = 0; p < nprobe; ++p) {
        const auto& list = posting_[order[static_cast<std::size_t>(p)].second];
        const std::size_t take = std::min<std::size_t>(list.size(), static_cast<std::size_t>(depth));
        for (std::size_t i = 0; i < take; ++i) {
            const std::uint32_t id = list[i];
            candidates.emplace_back(squared_distance(v, dataset_.row(id)), id);
            ++scanned;
        }
    }

    const std::size_t keep = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(k));
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end());

    RetrievalResult result;
    result.scanned = scanned;
    result.shortfall = keep < static_cast<std::size_t>(k);
    result.ids.reserve(keep);
    result.distances.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        result.ids.push_back(candidates[i].second);
        result.distances.push_back(std::sqrt(candidates[i].first));
    }
    return result;
}

bool check_ann_contract(const RetrievalResult& result, std::span<const float> v, double c,
                        const VectorSet& dataset) {
    if (result.ids.empty()) throw std::invalid_argument("ann contract: empty result");
    double best = squared_distance(v, dataset.row(0));
    for (std::size_t i = 1; i < dataset.size(); ++i)
        best = std::min(best, squared_distance(v, dataset.row(i)));
    const double bound = c * std::sqrt(best);
    for (double d : result.distances)
        if (d > bound) return false;
    return true;
}

}  // namespace vdt
