#pragma once

// Lets Eigen dense matrices hold the exact scalar types.

#include <Eigen/Core>

#include "treelie/integer.hpp"

namespace Eigen {

template <>
struct NumTraits<treelie::Checked64> : GenericNumTraits<std::int64_t> {
    using Real = treelie::Checked64;
    using NonInteger = double;
    using Nested = treelie::Checked64;
    using Literal = treelie::Checked64;
    enum { IsInteger = 1, IsSigned = 1, IsComplex = 0, RequireInitialization = 0,
           ReadCost = 1, AddCost = 2, MulCost = 3 };
};

template <>
struct NumTraits<treelie::BigInt> : GenericNumTraits<std::int64_t> {
    using Real = treelie::BigInt;
    using NonInteger = double;
    using Nested = treelie::BigInt;
    using Literal = treelie::BigInt;
    enum { IsInteger = 1, IsSigned = 1, IsComplex = 0, RequireInitialization = 1,
           ReadCost = 8, AddCost = 16, MulCost = 32 };
};

}  // namespace Eigen
