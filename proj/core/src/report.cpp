#include "mtv/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mtv {

using ordered_json = nlohmann::ordered_json;

std::string verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::Skipped: return "skipped";
  }
  return "?";
}

std::string lambda_string(const Rational& lambda) {
  if (den(lambda) == 1) return num(lambda).get_str();
  return to_string(lambda);
}

void Report::tally() {
  passed = failed = skipped = 0;
  for (const auto& c : curves)
    for (const auto& v : c.result.verdicts) {
      switch (v.status) {
        case VerdictStatus::Pass: passed++; break;
        case VerdictStatus::Fail: failed++; break;
        case VerdictStatus::Skipped: skipped++; break;
      }
    }
}

bool Report::all_pass() const {
  if (failed > 0) return false;
  for (const auto& c : curves)
    if (!c.result.all_pass) return false;
  return true;
}

namespace {

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  ordered_json s = ordered_json::array();
  for (const Integer& p : v.s) s.push_back(p.get_str());
  j["S"] = s;
  j["M"] = v.M.get_str();
  j["status"] = verdict_status_name(v.status);
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.status != VerdictStatus::Skipped) {
    j["lhs"] = v.lhs.rep.get_str();
    j["rhs"] = v.rhs.rep.get_str();
    j["exp_left"] = v.exp_left.get_str();
    j["exp_right"] = v.exp_right.get_str();
    j["raw_l"] = v.raw_l.value.get_str();
    j["raw_G"] = v.raw_g.value.get_str();
    j["strict_equal"] = v.strict_equal;
  }
  return j;
}

} // namespace

std::string render_json(const Report& r) {
  ordered_json j;
  j["tool"] = kToolVersion;
  ordered_json cfg;
  cfg["curves"] = r.config.curves_file;
  cfg["labels"] = r.config.labels;
  cfg["max_prime"] = r.config.max_prime;
  cfg["set_window"] = r.config.set_window;
  cfg["max_set_size"] = r.config.max_set_size;
  cfg["include_trivial_primes"] = r.config.include_trivial_primes;
  cfg["sha_overrides"] = r.config.sha_overrides;
  j["config"] = cfg;

  ordered_json curves = ordered_json::array();
  for (const auto& c : r.curves) {
    ordered_json cj;
    cj["label"] = c.label;
    cj["lambda"] =
        c.result.lambda_found ? lambda_string(c.result.lambda) : "unresolved";
    cj["status"] = c.result.all_pass ? "pass" : "fail";
    ordered_json vs = ordered_json::array();
    for (const auto& v : c.result.verdicts) vs.push_back(verdict_json(v));
    cj["verdicts"] = vs;
    curves.push_back(cj);
  }
  j["curves"] = curves;

  ordered_json summary;
  summary["curves"] = r.curves.size();
  summary["pass"] = r.passed;
  summary["fail"] = r.failed;
  summary["skipped"] = r.skipped;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "label,lambda,S,M,lhs,rhs,exp_left,exp_right,status\n";
  for (const auto& c : r.curves) {
    std::string lam =
        c.result.lambda_found ? lambda_string(c.result.lambda) : "unresolved";
    for (const auto& v : c.result.verdicts) {
      std::string s;
      for (size_t i = 0; i < v.s.size(); i++) {
        if (i) s += "+";
        s += v.s[i].get_str();
      }
      out << c.label << "," << lam << "," << s << "," << v.M.get_str() << ",";
      if (v.status == VerdictStatus::Skipped) {
        out << ",,,,";
      } else {
        out << v.lhs.rep.get_str() << "," << v.rhs.rep.get_str() << ","
            << v.exp_left.get_str() << "," << v.exp_right.get_str() << ",";
      }
      out << verdict_status_name(v.status) << "\n";
    }
  }
  return out.str();
}

void emit_report(const Report& r, const std::string& format,
                 const std::string& path) {
  if (format != "json" && format != "csv")
    throw Error("format must be json or csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << (format == "json" ? render_json(r) : render_csv(r));
  if (!out) throw Error("write failed: " + path);
}

} // namespace mtv
