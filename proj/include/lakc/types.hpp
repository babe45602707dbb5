#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lakc/errors.hpp"

namespace lakc {

namespace detail {

inline void require_finite(const std::vector<double>& values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw domain_error(std::string(what) + ": non-finite coordinate at flat index " +
                               std::to_string(i));
        }
    }
}

}  // namespace detail

// m points in d-dimensional Euclidean space, row-major.
class Dataset {
  public:
    Dataset(std::vector<double> points, std::size_t m, std::size_t d)
        : points_(std::move(points)), m_(m), d_(d) {
        if (m_ < 1 || d_ < 1) throw shape_error("Dataset: need m >= 1 and d >= 1");
        if (points_.size() != m_ * d_) {
            throw shape_error("Dataset: flat size " + std::to_string(points_.size()) +
                              " does not match m*d = " + std::to_string(m_ * d_));
        }
        detail::require_finite(points_, "Dataset");
    }

    static Dataset from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) throw shape_error("Dataset: no rows");
        const std::size_t d = rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * d);
        for (const auto& r : rows) {
            if (r.size() != d) throw shape_error("Dataset: ragged rows");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return Dataset(std::move(flat), rows.size(), d);
    }

    std::size_t size() const { return m_; }
    std::size_t dim() const { return d_; }

    std::span<const double> row(std::size_t i) const {
        return {points_.data() + i * d_, d_};
    }

    double at(std::size_t i, std::size_t j) const { return points_[i * d_ + j]; }

    const std::vector<double>& values() const { return points_; }

  private:
    std::vector<double> points_;
    std::size_t m_;
    std::size_t d_;
};

// Assignment of each of m points to one of k clusters, ids 0..k-1.
class Labeling {
  public:
    Labeling(std::vector<int> assign, int k) : assign_(std::move(assign)), k_(k) {
        if (k_ < 1) throw domain_error("Labeling: k must be >= 1");
        if (assign_.empty()) throw shape_error("Labeling: empty assignment");
        for (std::size_t i = 0; i < assign_.size(); ++i) {
            if (assign_[i] < 0 || assign_[i] >= k_) {
                throw domain_error("Labeling: id " + std::to_string(assign_[i]) + " at row " +
                                   std::to_string(i) + " outside [0, " + std::to_string(k_) + ")");
            }
        }
    }

    int k() const { return k_; }
    std::size_t size() const { return assign_.size(); }
    int operator[](std::size_t i) const { return assign_[i]; }
    const std::vector<int>& ids() const { return assign_; }

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
        for (int id : assign_) ++sizes[static_cast<std::size_t>(id)];
        return sizes;
    }

    // Member indices per cluster, each in ascending point order.
    std::vector<std::vector<std::size_t>> groups() const {
        std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
        for (std::size_t i = 0; i < assign_.size(); ++i) {
            out[static_cast<std::size_t>(assign_[i])].push_back(i);
        }
        return out;
    }

    // Predictor-input invariant: every cluster must hold at least one point.
    void require_nonempty_clusters() const {
        const auto sizes = cluster_sizes();
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] == 0) {
                throw empty_cluster_error("Labeling: cluster " + std::to_string(i) + " is empty");
            }
        }
    }

  private:
    std::vector<int> assign_;
    int k_;
};

// k centers in d dimensions, row-major.
class CenterSet {
  public:
    CenterSet(std::vector<double> centers, std::size_t k, std::size_t d)
        : centers_(std::move(centers)), k_(k), d_(d) {
        if (k_ < 1 || d_ < 1) throw shape_error("CenterSet: need k >= 1 and d >= 1");
        if (centers_.size() != k_ * d_) {
            throw shape_error("CenterSet: flat size does not match k*d");
        }
        detail::require_finite(centers_, "CenterSet");
    }

    std::size_t k() const { return k_; }
    std::size_t dim() const { return d_; }

    std::span<const double> row(std::size_t i) const {
        return {centers_.data() + i * d_, d_};
    }

    const std::vector<double>& values() const { return centers_; }

  private:
    std::vector<double> centers_;
    std::size_t k_;
    std::size_t d_;
};

// Label error rate alpha; the algorithms are defined for alpha in [0, 1/2).
class ErrorRate {
  public:
    explicit ErrorRate(double alpha) : alpha_(alpha) {
        if (!(alpha >= 0.0 && alpha < 0.5)) {
            throw domain_error("ErrorRate: alpha must lie in [0, 1/2), got " +
                               std::to_string(alpha));
        }
    }

    double value() const { return alpha_; }

  private:
    double alpha_;
};

inline void require_same_dim(const Dataset& data, const CenterSet& centers) {
    if (data.dim() != centers.dim()) {
        throw shape_error("dimension mismatch: data d=" + std::to_string(data.dim()) +
                          ", centers d=" + std::to_string(centers.dim()));
    }
}

inline void require_labels_match(const Dataset& data, const Labeling& labels) {
    if (data.size() != labels.size()) {
        throw shape_error("labeling covers " + std::to_string(labels.size()) + " points, data has " +
                          std::to_string(data.size()));
    }
}

}  // namespace lakc
