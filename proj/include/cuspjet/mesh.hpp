#pragma once

#include "cuspjet/germ.hpp"

#include <string>

namespace cuspjet {

struct MeshOptions {
    double s = 0.0;
    int grid = 64;       // grid x grid vertices
    double extent = 1.0; // (u,v) in [-extent, extent]^2
};

/// Wavefront OBJ sampling of the germ's polynomial representative at a fixed
/// deformation value: v/f records only, vertices row-major in u then v, quad
/// faces, 17 significant digits. Byte-deterministic.
std::string mesh_to_obj(const MapGerm<Rat>& germ, const MeshOptions& opt);

/// Sidecar JSON with the second-stratum data at the sampled deformation
/// value (roots only exist on the singular side). When the germ cannot be
/// normalized the sidecar carries a note instead.
std::string mesh_sidecar_json(const MapGerm<Rat>& germ, const MeshOptions& opt);

} // namespace cuspjet
