#pragma once

#include <string>
#include <vector>

#include "rational.hpp"
#include "tree.hpp"

namespace pcg {

// One row of the observed-field census: counts per nested discriminant
// window. "OTHER" and "TOTAL" rows are carried separately.
struct CensusRecord {
  std::string ipad;
  std::vector<long long> counts;  // one per window
};

struct Census {
  std::vector<std::string> windows;  // column names, e.g. i1 .. i100
  std::vector<CensusRecord> rows;    // named IPADs, file order
  CensusRecord other;
  CensusRecord total;
};

Census ingest_census(const std::string& csv_text, int p);

struct ComparisonRow {
  std::string ipad;
  std::vector<std::string> observed;  // 4-decimal strings per window
  std::string predicted;              // 4-decimal
  Rat predicted_exact;
  bool predicted_is_exact = true;  // false when the table entry is a lower bound
  std::string gap_widest;          // |observed - predicted| in the widest window
};

struct ComparisonReport {
  std::vector<std::string> windows;
  std::vector<ComparisonRow> rows;  // named IPADs then the Other bucket
};

ComparisonReport compare_census(const Census& census, const IpadTableResult& predictions);

std::string comparison_to_json(const ComparisonReport& r);
std::string comparison_to_csv(const ComparisonReport& r);

}  // namespace pcg
