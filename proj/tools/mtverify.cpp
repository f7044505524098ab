// Command-line front end: verify | symbols | invariants | count.
// Exit codes: 0 all non-skipped verdicts pass, 1 some verdict failed,
// 2 input/usage error, 3 internal invariant violation.

#include "mtv/engine.hpp"
#include "mtv/records.hpp"
#include "mtv/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace {

using namespace mtv;

std::vector<CurveRecord> select_records(const std::string& file,
                                        const std::vector<std::string>& labels) {
  std::vector<CurveRecord> all = load_curves(file);
  if (labels.empty()) return all;
  std::vector<CurveRecord> out;
  for (const std::string& l : labels) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const CurveRecord& r) { return r.label == l; });
    if (it == all.end()) throw Error("label not found: " + l);
    out.push_back(*it);
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct VerifyOptions {
  std::string curves_file;
  std::string labels_csv;
  long max_prime = 100;
  std::string window_csv = "5,7,11,13";
  int max_set_size = 1;
  std::vector<std::string> sha_overrides;
  bool include_trivial = false;
  std::string out_path;
  std::string format = "json";
};

int run_verify(const VerifyOptions& opt) {
  std::vector<std::string> labels = split_csv(opt.labels_csv);
  std::vector<CurveRecord> records = select_records(opt.curves_file, labels);

  std::map<std::string, Integer> overrides;
  for (const std::string& s : opt.sha_overrides) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw Error("--sha-override needs LABEL=n, got " + s);
    overrides[s.substr(0, eq)] = Integer(s.substr(eq + 1));
  }

  VerifyConfig cfg;
  cfg.max_prime = opt.max_prime;
  cfg.max_set_size = opt.max_set_size;
  cfg.include_trivial_primes = opt.include_trivial;
  cfg.set_window.clear();
  for (const std::string& w : split_csv(opt.window_csv))
    cfg.set_window.push_back(std::stol(w));

  for (const CurveRecord& r : records)
    if (r.rank != 1) throw Error("record " + r.label + " has rank != 1");

  // parallel map over curves; results merged in label order
  std::vector<CurveReport> results(records.size());
  std::vector<std::string> errors(records.size());
  unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, records.size() ? records.size() : 1);
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (unsigned t = 0; t < nthreads; t++) {
    pool.emplace_back([&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= records.size()) return;
        const CurveRecord& rec = records[i];
        try {
          Integer sha = rec.sha;
          auto ov = overrides.find(rec.label);
          if (ov != overrides.end()) sha = ov->second;
          WeierstrassCurve e = rec.curve();
          ModularSymbolSpace space(e);
          results[i].label = rec.label;
          results[i].result = verify_curve(e, space, rec.generator, sha, cfg);
        } catch (const std::exception& ex) {
          errors[i] = ex.what();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (size_t i = 0; i < records.size(); i++)
    if (!errors[i].empty())
      throw Error("curve " + records[i].label + ": " + errors[i]);

  std::sort(results.begin(), results.end(),
            [](const CurveReport& a, const CurveReport& b) {
              return a.label < b.label;
            });

  Report report;
  report.config.curves_file = opt.curves_file;
  report.config.labels = labels;
  report.config.max_prime = cfg.max_prime;
  report.config.set_window = cfg.set_window;
  report.config.max_set_size = cfg.max_set_size;
  report.config.include_trivial_primes = cfg.include_trivial_primes;
  report.config.sha_overrides = opt.sha_overrides;
  report.curves = std::move(results);
  report.tally();
  emit_report(report, opt.format, opt.out_path);

  for (const auto& c : report.curves) {
    std::cout << c.label << ": lambda="
              << (c.result.lambda_found ? lambda_string(c.result.lambda)
                                        : "unresolved")
              << " " << (c.result.all_pass ? "pass" : "FAIL") << "\n";
  }
  std::cout << "verdicts: " << report.passed << " pass, " << report.failed
            << " fail, " << report.skipped << " skipped -> " << opt.out_path
            << "\n";
  return report.all_pass() ? 0 : 1;
}

int run_symbols(const std::string& file, const std::string& label,
                long modulus) {
  std::vector<CurveRecord> recs = select_records(file, {label});
  const CurveRecord& rec = recs.front();
  WeierstrassCurve e = rec.curve();
  ModularSymbolSpace space(e);
  SymbolTable table = symbol_table(space, Integer(modulus));

  // resolve lambda by the default single-prime family
  std::string lam = "unresolved";
  if (rec.rank == 1 && !rec.generator.at_infinity) {
    VerifyConfig cfg;
    cfg.max_set_size = 1;
    CurveResult res = verify_curve(e, space, rec.generator, rec.sha, cfg);
    if (res.lambda_found && res.all_pass) lam = lambda_string(res.lambda);
  }
  std::cout << "M=" << modulus << " N=" << space.level() << " lambda=" << lam
            << "\n";
  for (const auto& [a, v] : table.values)
    std::cout << a.get_str() << "\t" << to_string(v) << "\n";
  return 0;
}

int run_invariants(const std::string& file, const std::string& label) {
  std::vector<CurveRecord> recs = select_records(file, {label});
  const CurveRecord& rec = recs.front();
  if (rec.rank != 1) throw Error("record " + rec.label + " has rank != 1");
  WeierstrassCurve e = rec.curve();
  InvariantSet inv = compute_invariants(e, rec.generator, rec.sha);
  std::cout << "label=" << rec.label << "\n"
            << "u=" << inv.u.get_str() << "\n"
            << "v=" << inv.v.get_str() << "\n"
            << "mu=" << inv.mu.get_str() << "\n"
            << "C=" << inv.C.get_str() << "\n"
            << "index_E_E0=" << inv.index_e_e0.get_str() << "\n"
            << "coker_phi=" << inv.coker_phi.get_str() << "\n"
            << "sha=" << inv.sha.get_str() << "\n"
            << "Q=" << to_string(inv.Q) << "\n";
  for (const auto& rd : inv.bad_reduction)
    std::cout << "p=" << rd.p.get_str() << " kind=" << to_string(rd.kind)
              << " kodaira=" << rd.kodaira.str()
              << " cp=" << rd.cp.get_str() << "\n";
  return 0;
}

int run_count(const std::string& file, const std::string& label, long p) {
  std::vector<CurveRecord> recs = select_records(file, {label});
  WeierstrassCurve e = recs.front().curve();
  ReductionData rd = classify_reduction(e, Integer(p));
  std::cout << "p=" << p << " kind=" << to_string(rd.kind);
  if (rd.kind == ReductionKind::GoodOrdinary ||
      rd.kind == ReductionKind::GoodSupersingular)
    std::cout << " n_p=" << rd.np.get_str() << " a_p=" << rd.ap.get_str();
  else
    std::cout << " kodaira=" << rd.kodaira.str() << " c_p=" << rd.cp.get_str();
  std::cout << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplicative Mazur-Tate identity verifier for rank-1 "
               "elliptic curves"};
  app.require_subcommand(1);

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand("verify", "run the identity tests");
  verify->add_option("--curves", vopt.curves_file, "curve database file")
      ->required();
  verify->add_option("--labels", vopt.labels_csv, "comma-separated labels");
  verify->add_option("--max-prime", vopt.max_prime,
                     "single-prime tests up to this bound");
  verify->add_option("--set-window", vopt.window_csv,
                     "primes eligible for multi-prime sets");
  verify->add_option("--max-set-size", vopt.max_set_size,
                     "largest multi-prime set size");
  verify->add_option("--sha-override", vopt.sha_overrides,
                     "LABEL=n (repeatable)");
  verify->add_flag("--include-trivial-primes", vopt.include_trivial,
                   "also run p = 2, 3 (vacuous)");
  verify->add_option("--out", vopt.out_path, "report path")->required();
  verify->add_option("--format", vopt.format, "json or csv");

  std::string sfile, slabel;
  long smod = 0;
  CLI::App* symbols = app.add_subcommand("symbols", "dump a symbol table");
  symbols->add_option("--curves", sfile, "curve database file")->required();
  symbols->add_option("--label", slabel, "curve label")->required();
  symbols->add_option("--modulus", smod, "table modulus M")->required();

  std::string ifile, ilabel;
  CLI::App* invariants =
      app.add_subcommand("invariants", "print the arithmetic invariants");
  invariants->add_option("--curves", ifile, "curve database file")->required();
  invariants->add_option("--label", ilabel, "curve label")->required();

  std::string cfile, clabel;
  long cprime = 0;
  CLI::App* count = app.add_subcommand("count", "local data at one prime");
  count->add_option("--curves", cfile, "curve database file")->required();
  count->add_option("--label", clabel, "curve label")->required();
  count->add_option("--prime", cprime, "prime p")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(vopt);
    if (app.got_subcommand(symbols)) return run_symbols(sfile, slabel, smod);
    if (app.got_subcommand(invariants)) return run_invariants(ifile, ilabel);
    if (app.got_subcommand(count)) return run_count(cfile, clabel, cprime);
  } catch (const mtv::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
