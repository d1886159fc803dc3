#pragma once

/**
 * @file space.hpp
 * @brief Finite carrier spaces and the functions, maps and subsets living on them.
 *
 * A finite space stands in for a compactum: every subset is closed and open
 * and every function is continuous, so no topology is modelled.  Points are
 * identified by label; the label order only fixes iteration order.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idemkit/error.hpp"
#include "idemkit/score.hpp"

namespace idemkit {

class FiniteSpace {
public:
    explicit FiniteSpace(std::vector<std::string> labels) {
        detail::require(!labels.empty(), "FiniteSpace: a space needs at least one point");
        auto storage = std::make_shared<Storage>();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const bool fresh = storage->index.emplace(labels[i], i).second;
            detail::require(fresh, "FiniteSpace: duplicate label '" + labels[i] + "'");
        }
        storage->labels = std::move(labels);
        storage_ = std::move(storage);
    }

    /// Points labelled prefix0, prefix1, ...
    static FiniteSpace numbered(std::size_t n, const std::string& prefix = "x") {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
        return FiniteSpace(std::move(labels));
    }

    std::size_t size() const noexcept { return storage_->labels.size(); }
    const std::string& label(std::size_t i) const { return storage_->labels.at(i); }
    std::span<const std::string> labels() const noexcept { return storage_->labels; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        auto it = storage_->index.find(label);
        if (it == storage_->index.end()) return std::nullopt;
        return it->second;
    }

    std::size_t at(const std::string& label) const {
        auto i = index_of(label);
        detail::require(i.has_value(), "unknown point '" + label + "'");
        return *i;
    }

    bool contains(const std::string& label) const { return index_of(label).has_value(); }

    /// Same labels in the same order (cheap when storage is shared).
    bool identical(const FiniteSpace& other) const noexcept {
        return storage_ == other.storage_ || storage_->labels == other.storage_->labels;
    }

    /// Spaces are equal when their label sets are equal.
    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
        if (a.identical(b)) return true;
        if (a.size() != b.size()) return false;
        return std::all_of(a.labels().begin(), a.labels().end(),
                           [&](const std::string& l) { return b.contains(l); });
    }

    /// Subspace keeping the listed positions, in the given order.
    FiniteSpace restricted(std::span<const std::size_t> keep) const {
        std::vector<std::string> labels;
        labels.reserve(keep.size());
        for (auto i : keep) labels.push_back(label(i));
        return FiniteSpace(std::move(labels));
    }

private:
    struct Storage {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::shared_ptr<const Storage> storage_;
};

namespace detail {

inline void require_same_space(const FiniteSpace& a, const FiniteSpace& b, const char* where) {
    require(a == b, std::string(where) + ": space mismatch");
}

/// Re-express values indexed by `from` in the order of `to` (equal spaces).
template <class T>
std::vector<T> align(const FiniteSpace& from, const std::vector<T>& values, const FiniteSpace& to) {
    if (from.identical(to)) return values;
    require_same_space(from, to, "align");
    std::vector<T> out;
    out.reserve(values.size());
    for (const auto& l : to.labels()) out.push_back(values[from.at(l)]);
    return out;
}

}  // namespace detail

/// A total function on a finite space. RealFunction rejects non-finite values.
template <class T>
class PointFunction {
public:
    PointFunction(FiniteSpace space, std::vector<T> values)
        : space_(std::move(space)), values_(std::move(values)) {
        detail::require(values_.size() == space_.size(), "function: value count does not match the space");
        if constexpr (std::is_same_v<T, double>) {
            for (double v : values_) detail::require(std::isfinite(v), "function: values must be finite");
        }
    }

    static PointFunction constant(FiniteSpace space, T c) {
        const auto n = space.size();
        return PointFunction(std::move(space), std::vector<T>(n, c));
    }

    const FiniteSpace& space() const noexcept { return space_; }
    const std::vector<T>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    T operator[](std::size_t i) const { return values_[i]; }
    T at(const std::string& label) const { return values_[space_.at(label)]; }

    /// Same function expressed in another ordering of an equal space.
    PointFunction on(const FiniteSpace& space) const {
        return PointFunction(space, detail::align(space_, values_, space));
    }

private:
    FiniteSpace space_;
    std::vector<T> values_;
};

using RealFunction = PointFunction<double>;
using UnitFunction = PointFunction<UnitScore>;

/// Pointwise max of two functions on the same space.
template <class T>
PointFunction<T> pointwise_max(const PointFunction<T>& a, const PointFunction<T>& b) {
    const auto bv = b.on(a.space());
    std::vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max<double>(a[i], bv[i]);
    return PointFunction<T>(a.space(), std::move(out));
}

/// lambda_X + phi
inline RealFunction shifted(const RealFunction& phi, double lambda) {
    std::vector<double> out(phi.values());
    for (auto& v : out) v += lambda;
    return RealFunction(phi.space(), std::move(out));
}

/// A subset of a finite space, stored as a bitmask (spaces up to 64 points).
class SubsetMask {
public:
    static constexpr std::size_t kMaxPoints = 64;

    SubsetMask(FiniteSpace space, std::uint64_t bits) : space_(std::move(space)), bits_(bits) {
        detail::require(space_.size() <= kMaxPoints, "SubsetMask: space larger than 64 points");
        if (space_.size() < 64) detail::require((bits_ >> space_.size()) == 0, "SubsetMask: bits outside the space");
    }

    SubsetMask(FiniteSpace space, const std::vector<std::string>& members) : SubsetMask(space, 0) {
        for (const auto& m : members) bits_ |= std::uint64_t{1} << space_.at(m);
    }

    static SubsetMask empty(FiniteSpace space) { return SubsetMask(std::move(space), 0); }
    static SubsetMask full(FiniteSpace space) {
        const auto n = space.size();
        return SubsetMask(std::move(space), n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    const FiniteSpace& space() const noexcept { return space_; }
    std::uint64_t bits() const noexcept { return bits_; }
    bool contains(std::size_t i) const noexcept { return (bits_ >> i) & 1U; }
    bool is_empty() const noexcept { return bits_ == 0; }

    std::vector<std::string> members() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < space_.size(); ++i)
            if (contains(i)) out.push_back(space_.label(i));
        return out;
    }

    bool subset_of(const SubsetMask& other) const { return (bits_ & ~other.bits_) == 0; }

    friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
        return a.space_ == b.space_ && a.bits_ == SubsetMask(a.space_, b.members()).bits_;
    }

private:
    FiniteSpace space_;
    std::uint64_t bits_;
};

/// phi_t = { x | phi(x) >= t }
inline SubsetMask level_set(const RealFunction& phi, double t) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (phi[i] >= t) bits |= std::uint64_t{1} << i;
    return SubsetMask(phi.space(), bits);
}

/// (phi(x1)-phi(x2)) * (psi(x1)-psi(x2)) >= 0 for every pair of points.
template <class T>
bool comonotone(const PointFunction<T>& phi, const PointFunction<T>& psi) {
    detail::require_same_space(phi.space(), psi.space(), "comonotone");
    const auto other = psi.on(phi.space());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j) {
            const double d1 = static_cast<double>(phi[i]) - static_cast<double>(phi[j]);
            const double d2 = static_cast<double>(other[i]) - static_cast<double>(other[j]);
            if (d1 * d2 < -1e-12) return false;
        }
    return true;
}

/// A map between finite spaces given by labels. It may be invalid (partial,
/// or pointing outside the target); validate_map tells, and every consumer
/// rejects invalid maps.
class PointMap {
public:
    PointMap(FiniteSpace source, FiniteSpace target, std::map<std::string, std::string> assignment)
        : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {}

    static PointMap from_indices(FiniteSpace source, FiniteSpace target, const std::vector<std::size_t>& image) {
        detail::require(image.size() == source.size(), "PointMap: image size does not match the source");
        std::map<std::string, std::string> a;
        for (std::size_t i = 0; i < image.size(); ++i) a.emplace(source.label(i), target.label(image[i]));
        return PointMap(std::move(source), std::move(target), std::move(a));
    }

    static PointMap identity(const FiniteSpace& space) {
        std::vector<std::size_t> image(space.size());
        for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
        return from_indices(space, space, image);
    }

    const FiniteSpace& source() const noexcept { return source_; }
    const FiniteSpace& target() const noexcept { return target_; }
    const std::map<std::string, std::string>& assignment() const noexcept { return assignment_; }

    /// Image index (in the target) of each source point, in source order.
    std::vector<std::size_t> image_indices() const {
        std::vector<std::size_t> out;
        out.reserve(source_.size());
        for (const auto& l : source_.labels()) {
            auto it = assignment_.find(l);
            detail::require(it != assignment_.end(), "PointMap: no image for '" + l + "'");
            auto j = target_.index_of(it->second);
            detail::require(j.has_value(), "PointMap: image '" + it->second + "' is not a target point");
            out.push_back(*j);
        }
        return out;
    }

private:
    FiniteSpace source_;
    FiniteSpace target_;
    std::map<std::string, std::string> assignment_;
};

inline bool validate_map(const PointMap& g) {
    for (const auto& [from, to] : g.assignment())
        if (!g.source().contains(from) || !g.target().contains(to)) return false;
    return std::all_of(g.source().labels().begin(), g.source().labels().end(),
                       [&](const std::string& l) { return g.assignment().contains(l); });
}

/// g after h.
inline PointMap compose(const PointMap& g, const PointMap& h) {
    detail::require(validate_map(g) && validate_map(h), "compose: invalid map");
    detail::require_same_space(h.target(), g.source(), "compose");
    std::map<std::string, std::string> a;
    for (const auto& [from, mid] : h.assignment()) a.emplace(from, g.assignment().at(mid));
    return PointMap(h.source(), g.target(), std::move(a));
}

}  // namespace idemkit
