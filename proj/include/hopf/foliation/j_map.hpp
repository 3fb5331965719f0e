#pragma once

#include "hopf/cayley_dickson.hpp"

namespace hopf {

/// Value of the tangency map at a field (u, v) over base point (x, y).
template <Scalar S>
struct JValue {
    S first;
    Element<S> middle;
    S last;
};

/// J(u, v) = (<x,u>, u conj(y) + x conj(v), <y,v>). A field is tangent to the
/// leaves exactly when all three components vanish.
template <Scalar S>
JValue<S> J_map(const Element<S>& x, const Element<S>& y, const Element<S>& u, const Element<S>& v) {
    return {inner(x, u), u * y.conj() + x * v.conj(), inner(y, v)};
}

}  // namespace hopf
