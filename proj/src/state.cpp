#include "svir/state.hpp"

namespace svir {

const char* to_string(Compartment c)
{
    switch (c) {
    case Compartment::S:
        return "S";
    case Compartment::V:
        return "V";
    case Compartment::I:
        return "I";
    case Compartment::R:
        return "R";
    }
    return "?";
}

FieldState FieldState::homogeneous(std::size_t nodes, double s, double v, double i, double r, double t)
{
    return {t, Field(nodes, s), Field(nodes, v), Field(nodes, i), Field(nodes, r)};
}

Field& FieldState::field(Compartment c)
{
    switch (c) {
    case Compartment::S:
        return S;
    case Compartment::V:
        return V;
    case Compartment::I:
        return I;
    case Compartment::R:
        break;
    }
    return R;
}

const Field& FieldState::field(Compartment c) const
{
    return const_cast<FieldState&>(*this).field(c);
}

} // namespace svir
