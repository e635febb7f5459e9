#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nl/chart.hpp"
#include "nl/flag.hpp"
#include "nl/lie.hpp"

namespace nl {

/// 17-significant-digit decimal form; round-trips binary64 exactly.
std::string format_double(double v);

// Operator-field fixtures: n, r, d, then one coefficient matrix per
// multi-index in lexicographic order. Decimal round-trip is exact.
void save_field(std::ostream& os, const OperatorField& field);
OperatorField load_field(std::istream& is);

struct PairFixture {
  HomogeneousPair pair;
  std::optional<PartialStructure> I;
  std::optional<Mat> k_basis;
};

// Algebra fixtures: dim, structure-constant triples, optional matrix
// basis, h and V bases, sampled automorphisms, optional operator I and
// subalgebra basis.
void save_pair(std::ostream& os, const PairFixture& fixture);
PairFixture load_pair(std::istream& is);

struct FlagFixture {
  StarAlgebra algebra;
  FlagSpec flag;
};

void save_flag(std::ostream& os, const FlagFixture& fixture);
FlagFixture load_flag(std::istream& is);

// File helpers; throw ParseError on malformed input.
OperatorField load_field_file(const std::string& path);
PairFixture load_pair_file(const std::string& path);
FlagFixture load_flag_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nl
