#ifndef WGRAPH_PERMUTATION_HPP_
#define WGRAPH_PERMUTATION_HPP_

#include <cstddef>
#include <numeric>
#include <vector>

#include "wgraph/error.hpp"

namespace wgraph {

// Bijection of {0, ..., n-1} stored as its image array.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
        std::vector<bool> hit(image_.size(), false);
        for (std::size_t x : image_) {
            if (x >= image_.size() || hit[x])
                throw Error(ErrorCode::BadParameter, "image array is not a bijection");
            hit[x] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> image(n);
        std::iota(image.begin(), image.end(), std::size_t{0});
        return Permutation(std::move(image));
    }

    [[nodiscard]] std::size_t size() const noexcept { return image_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t x) const { return image_.at(x); }
    [[nodiscard]] const std::vector<std::size_t>& image() const noexcept { return image_; }

    [[nodiscard]] bool is_identity() const {
        for (std::size_t i = 0; i < image_.size(); ++i)
            if (image_[i] != i)
                return false;
        return true;
    }

    [[nodiscard]] Permutation inverse() const {
        std::vector<std::size_t> inv(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i)
            inv[image_[i]] = i;
        return Permutation(std::move(inv));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> image_;
};

/// (outer ∘ inner)(x) = outer(inner(x)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size())
        throw Error(ErrorCode::SizeMismatch, "composing permutations of different sizes");
    std::vector<std::size_t> image(inner.size());
    for (std::size_t x = 0; x < inner.size(); ++x)
        image[x] = outer(inner(x));
    return Permutation(std::move(image));
}

} // namespace wgraph

#endif
