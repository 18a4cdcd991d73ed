#pragma once

#include <filesystem>
#include <string>

#include "coxmin/matrix_group.hpp"

namespace coxmin {

// Reads a group description file.  The format is line based:
//
//   # comment
//   conductor 8
//   dimension 2
//   generator
//   z, 0
//   0, z^-1
//   generator
//   (z - z^3)/2, (z - z^3)/2
//   ...
//   symplectic
//   0, 1, 0, 0
//   ...
//
// Matrix entries use the scalar grammar of Q(zeta_N) with z = zeta_N for the
// declared conductor.  A file may instead consist of a single line
// `catalog <tag>` naming a builtin group; catalog tags cannot be combined
// with explicit fields.  Malformed input raises ValidationError with a
// `file:line:` prefix.
GroupInput loadGroupFile(const std::filesystem::path& path);

// Same grammar from an in-memory string; `origin` names the source in errors.
GroupInput parseGroupText(const std::string& text, const std::string& origin);

// Builtin groups, addressable by tag:
//   ADE A m   (m >= 1)     cyclic subgroup of SL(2) of order m+1
//   ADE D m   (m >= 4)     binary dihedral group of order 4(m-2)
//   ADE E 6|7|8            binary tetrahedral / octahedral / icosahedral
//   order32                the order-32 subgroup of SL(4)
//   G4                     complex reflection group no. 4 acting on C^4
//   type_G l r             G(K, alpha) over a binary dihedral K (r odd,
//                          r <= l, l = gcd(l,(r+1)/2) * gcd(l,(r-1)/2))
//   type_K type_P type_Q type_U type_V
//                          G(K, alpha) over binary tetrahedral, octahedral
//                          (P, Q), and icosahedral (U, V) groups
// The type_* groups carry the symplectic form dx^dy + dz^dw.
GroupInput catalogGroup(const std::string& tag);

}  // namespace coxmin
