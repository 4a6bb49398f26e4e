#pragma once

#include "svir/spatial.hpp"

#include <array>
#include <cstddef>

namespace svir {

enum class Compartment { S, V, I, R };

inline constexpr std::array<Compartment, 4> all_compartments{Compartment::S, Compartment::V,
                                                             Compartment::I, Compartment::R};

const char* to_string(Compartment c);

/// The four compartment fields at one time.
struct FieldState {
    double t = 0.0;
    Field S;
    Field V;
    Field I;
    Field R;

    /// Spatially constant state on `nodes` nodes.
    static FieldState homogeneous(std::size_t nodes, double s, double v, double i, double r, double t = 0.0);

    Field& field(Compartment c);
    const Field& field(Compartment c) const;
    std::size_t nodes() const noexcept { return S.size(); }
};

} // namespace svir
