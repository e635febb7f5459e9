#pragma once

#include <cstdint>
#include <string>

#include "nl/lie.hpp"
#include "nl/rng.hpp"

namespace nl {

struct LieFixture {
  std::string name;
  HomogeneousPair pair;
  PartialStructure I;
};

/// su(2) with h = span{e3}, V = span{e1,e2}, rotation samples exp(ad_{t e3})
/// and the rotation I on V. Includes the matrix realization.
LieFixture fixture_su2();

/// Abelian R^2, h = 0, samples {id, -id} (-id is not exp(ad_h)).
LieFixture fixture_abelian2();

/// Abelian R^4 with the block rotation I.
LieFixture fixture_abelian4();

/// Heisenberg + R, h = 0, with an operator I that fails the integrability
/// criterion (the recorded false instance).
LieFixture fixture_heisenberg4();

/// Variant of the Heisenberg fixture whose I passes the criterion.
LieFixture fixture_heisenberg4_true();

/// Deterministic random fixture with dim g <= 8; the operator always
/// passes check_IV (membership in the V operator class).
LieFixture random_fixture(std::uint64_t seed);

}  // namespace nl
