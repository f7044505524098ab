#ifndef MTV_RECORDS_HPP
#define MTV_RECORDS_HPP

#include "mtv/arith.hpp"
#include "mtv/curve.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtv {

struct CurveRecord {
  std::string label;
  std::array<Integer, 5> ainvs; // a1, a2, a3, a4, a6
  Integer conductor = 0;
  int rank = -1;
  RationalPoint generator; // infinity when absent (rank 0 records)
  Integer torsion_order = 0;
  std::map<Integer, Integer> tamagawa;
  Integer sha = 0; // 0 = unknown (cremona-line ingestion)

  WeierstrassCurve curve() const {
    return WeierstrassCurve(ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4]);
  }
};

// Parses and validates the JSON curve database: schema, generator on the
// curve, minimal model, Tamagawa numbers against Tate, conductor. Throws
// Error with the offending label/field.
std::vector<CurveRecord> parse_curve_json(const std::string& path);
std::vector<CurveRecord> parse_curve_json_text(const std::string& text);

// "label a1 a2 a3 a4 a6 rank x y" (whitespace separated, '#' comments).
// Returns a partial record: tamagawa and sha must come from elsewhere.
CurveRecord parse_cremona_line(const std::string& line);

// Loads either format by extension (.json vs anything else). Cremona-line
// records get computed tamagawa/torsion and sha = 1.
std::vector<CurveRecord> load_curves(const std::string& path);

} // namespace mtv

#endif
