#include "mtv/records.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mtv {

namespace {

using nlohmann::json;

Integer json_int(const json& j, const std::string& field,
                 const std::string& label) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error("record " + label + ": field '" + field +
              "' must be an integer");
}

CurveRecord record_from_json(const json& j, size_t pos) {
  if (!j.is_object()) throw Error("curve record must be an object");
  std::string label = j.value("label", "");
  if (label.empty())
    throw Error("record #" + std::to_string(pos) + ": missing label");

  for (const char* field : {"ainvs", "conductor", "rank", "generator",
                            "torsion_order", "tamagawa", "sha"})
    if (!j.contains(field))
      throw Error("record " + label + ": missing field '" + field + "'");

  CurveRecord r;
  r.label = label;
  const json& ai = j.at("ainvs");
  if (!ai.is_array() || ai.size() != 5)
    throw Error("record " + label + ": ainvs must have 5 entries");
  for (size_t i = 0; i < 5; i++) r.ainvs[i] = json_int(ai[i], "ainvs", label);
  r.conductor = json_int(j.at("conductor"), "conductor", label);
  r.rank = j.at("rank").get<int>();
  const json& gen = j.at("generator");
  if (!gen.is_array() || gen.size() != 2)
    throw Error("record " + label + ": generator must be [x, y] strings");
  r.generator = RationalPoint::affine(parse_rational(gen[0].get<std::string>()),
                                      parse_rational(gen[1].get<std::string>()));
  r.torsion_order = json_int(j.at("torsion_order"), "torsion_order", label);
  const json& tam = j.at("tamagawa");
  if (!tam.is_object())
    throw Error("record " + label + ": tamagawa must be an object");
  for (auto it = tam.begin(); it != tam.end(); ++it)
    r.tamagawa[Integer(it.key())] = json_int(it.value(), "tamagawa", label);
  r.sha = json_int(j.at("sha"), "sha", label);
  return r;
}

void validate_record(const CurveRecord& r) {
  WeierstrassCurve e = r.curve(); // also rejects singular models

  if (!r.generator.at_infinity && !on_curve(e, r.generator))
    throw Error("record " + r.label + ": generator " +
                to_string(r.generator) + " is not on the curve");
  if (r.rank == 1 && r.generator.at_infinity)
    throw Error("record " + r.label + ": rank 1 needs a generator");
  if (r.sha < 1)
    throw Error("record " + r.label + ": sha must be >= 1");

  // minimality, Tamagawa and conductor cross-checks via Tate
  Integer n = 1;
  std::map<Integer, Integer> cp;
  for (const Integer& p : e.bad_primes()) {
    ReductionData rd;
    try {
      rd = classify_reduction(e, p);
    } catch (const Error& err) {
      throw Error("record " + r.label + ": " + err.what());
    }
    Integer q = 1;
    for (long i = 0; i < rd.conductor_exponent; i++) q *= p;
    n *= q;
    cp[p] = rd.cp;
  }
  if (n != r.conductor)
    throw Error("record " + r.label + ": conductor mismatch (computed " +
                to_string(n) + ")");
  if (r.tamagawa.size() != cp.size())
    throw Error("record " + r.label +
                ": tamagawa keys must be exactly the bad primes");
  for (const auto& [p, c] : cp) {
    auto it = r.tamagawa.find(p);
    if (it == r.tamagawa.end())
      throw Error("record " + r.label + ": tamagawa missing prime " +
                  to_string(p));
    if (it->second != c)
      throw Error("record " + r.label + ": tamagawa mismatch at " +
                  to_string(p) + " (computed " + to_string(c) + ")");
  }
}

} // namespace

std::vector<CurveRecord> parse_curve_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_array()) throw Error("curve file must be a JSON array");
  std::vector<CurveRecord> out;
  for (size_t i = 0; i < doc.size(); i++) {
    CurveRecord r = record_from_json(doc[i], i);
    validate_record(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CurveRecord> parse_curve_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_json_text(ss.str());
}

CurveRecord parse_cremona_line(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tok;
  std::string t;
  while (ss >> t) tok.push_back(t);
  if (tok.size() != 9)
    throw Error("cremona line needs 9 fields, got " +
                std::to_string(tok.size()));
  CurveRecord r;
  r.label = tok[0];
  try {
    for (int i = 0; i < 5; i++) r.ainvs[i] = Integer(tok[1 + i]);
    r.rank = std::stoi(tok[6]);
    r.generator =
        RationalPoint::affine(parse_rational(tok[7]), parse_rational(tok[8]));
  } catch (const std::invalid_argument&) {
    throw Error("malformed cremona line: " + line);
  }
  return r;
}

std::vector<CurveRecord> load_curves(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return parse_curve_json(path);

  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<CurveRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    CurveRecord r;
    try {
      r = parse_cremona_line(line);
    } catch (const Error& err) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + err.what());
    }
    // fill the computed fields
    WeierstrassCurve e = r.curve();
    r.conductor = conductor(e);
    for (const Integer& p : e.bad_primes())
      r.tamagawa[p] = classify_reduction(e, p).cp;
    r.torsion_order = torsion_subgroup(e).order;
    r.sha = 1;
    validate_record(r);
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace mtv
