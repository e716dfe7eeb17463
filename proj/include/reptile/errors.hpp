#pragma once

#include <stdexcept>
#include <string>

namespace reptile {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMap : Error {
    SingularMap() : Error("affine map has zero determinant") {}
};

struct NotIsometry : Error {
    NotIsometry() : Error("map is not an isometry (similarity ratio != 1)") {}
};

struct NoUniqueFixedPoint : Error {
    NoUniqueFixedPoint() : Error("1 is an eigenvalue of the linear part; no unique fixed point") {}
};

struct NotConvex : Error {
    explicit NotConvex(const std::string& what = "polygon is not convex and counterclockwise")
        : Error(what) {}
};

struct DepthTooShallow : Error {
    DepthTooShallow() : Error("2*r^n >= 1: depth too shallow for a certified diameter bound") {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what = "word budget exceeded") : Error(what) {}
};

struct VertexBudgetExceeded : Error {
    explicit VertexBudgetExceeded(std::size_t budget)
        : Error("candidate vertex budget exceeded (" + std::to_string(budget) +
                "): bound too loose or system not finite type") {}
};

struct NotPointNeighbor : Error {
    NotPointNeighbor() : Error("vertex is not classified as a point neighbor") {}
};

struct NoEdgeNeighbors : Error {
    NoEdgeNeighbors() : Error("edge-neighbor subgraph is empty") {}
};

struct NilpotentMatrix : Error {
    NilpotentMatrix() : Error("adjacency matrix is nilpotent (spectral radius 0)") {}
};

struct NotStronglyConnected : Error {
    NotStronglyConnected() : Error("component is not strongly connected") {}
};

struct UnknownGalleryName : Error {
    explicit UnknownGalleryName(const std::string& name)
        : Error("unknown gallery name: " + name) {}
};

struct SpecParseError : Error {
    explicit SpecParseError(const std::string& what) : Error("spec parse error: " + what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace reptile
