#pragma once

#include "epocs/signal.hpp"

#include <memory>
#include <vector>

namespace epocs {

// Orthonormal sparsifying transform.  dct2_orthonormal is the orthonormal
// type-II DCT; image-shaped signals are transformed separably along rows and
// columns.  Forward followed by inverse is the identity and Parseval holds.
class TransformOp {
public:
    enum class Kind { identity, dct2_orthonormal };

    static TransformOp identity(int length);
    static TransformOp dct(int length);

    Signal forward(const Signal& x) const;
    Signal inverse(const Signal& s) const;

    Kind kind() const { return kind_; }
    int length() const { return length_; }

private:
    TransformOp(Kind k, int length);

    struct BasisCache;
    Kind kind_;
    int length_;
    std::shared_ptr<BasisCache> cache_; // shared so TransformOp stays copyable
};

// One-dimensional orthonormal type-II DCT and its inverse (shape tags are
// ignored; the vector is treated as 1D).
Signal dct_forward(const Signal& x);
Signal dct_inverse(const Signal& s);

} // namespace epocs
