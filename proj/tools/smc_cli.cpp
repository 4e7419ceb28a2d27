// smc: verify data files, run the stratum searches, split naive tables, list Pell solutions, browse the catalogue.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad usage or unreadable input.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "smc/json_io.hpp"

using namespace smc;

namespace {

struct Output {
  bool as_json = false;
  std::vector<std::string> argv;

  int emit(const json& result, const std::string& text, int code) const {
    if (as_json) {
      json j{{"schema", kReportSchema}, {"command", argv}, {"exit", code}, {"result", result}};
      std::cout << dump(j);
    } else {
      std::cout << text;
    }
    return code;
  }
};

std::string verify_text(const VerifyResult& v, const std::string& name) {
  std::ostringstream os;
  os << name << ": " << (v.pass() ? "pass" : "FAIL") << "\n";
  for (const auto& r : v.reports) os << "  " << describe(r) << "\n";
  if (!v.stratum.empty()) os << "  stratum " << v.stratum << " (" << stratum_alias(v.stratum) << ")\n";
  return os.str();
}

std::string stratum_text(const StratumResult& r) {
  std::ostringstream os;
  os << r.stratum << ": " << r.survivors.size() << " survivor(s), " << r.trace.examined << " examined\n";
  for (const auto& [k, v] : r.ranges) os << "  range " << k << " " << v << "\n";
  for (const auto& [k, v] : r.trace.rejected) {
    os << "  rejected by " << k << ": " << v;
    const auto& s = r.trace.samples.at(k);
    if (!s.empty()) os << "  (e.g. " << s.front() << ")";
    os << "\n";
  }
  for (const auto& s : r.survivors) {
    os << "  * " << s.param_string();
    if (!s.group.empty()) os << "  group " << s.group;
    if (s.match) os << "  -> " << s.match->entry << " [" << s.match->fusion_class << "]" << (s.match->fusion_agrees ? "" : " (fusion unconfirmed)");
    else os << "  -> no catalogue match";
    if (s.twists)
      os << "  twist scan to order " << s.twists->max_order << ": " << s.twists->solutions << " solution(s)";
    os << "\n";
    for (const auto& n : s.notes) os << "      " << n << "\n";
  }
  for (const auto& [k, v] : r.tallies) os << "  " << k << ": " << v << "\n";
  if (!r.citation.empty()) os << "  " << r.citation << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

void finish_stratum(StratumResult& r, int threads, int twist_order) {
  match_to_catalogue(r, threads);
  if (twist_order <= 0) return;
  for (auto& s : r.survivors)
    if (s.data && !(s.match && s.match->fusion_agrees)) s.twists = twist_scan(*s.data, twist_order);
}

}  // namespace

int main(int argc, char** argv) {
  Output out;
  for (int i = 0; i < argc; ++i) out.argv.push_back(i ? argv[i] : "smc");
  int threads = static_cast<int>(default_threads());

  CLI::App app{"Super-modular category data toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", out.as_json, "machine-readable output");
  app.add_option("--threads", threads, "worker threads for searches")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "run every applicable check on a data file");
  std::string verify_path;
  std::optional<std::string> expect;
  verify->add_option("file", verify_path, "data file")->required();
  verify->add_option("--expect-stratum", expect, "assert the Galois stratum");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "search one Galois stratum, or all of them");
  std::string stratum;
  std::optional<long> bound;
  int twist_order = 60;
  enumerate->add_option("stratum,--stratum", stratum, "stratum label or alias (Z4, Z3, <(01)>, Klein4, ..., all)");
  enumerate->add_option("--bound", bound, "search bound (naive coefficients, or dimensions for <(01)(23)>)")->check(CLI::PositiveNumber);
  enumerate->add_option("--twist-order", twist_order, "twist scan order for unmatched survivors (0 disables)");

  // split
  auto* split = app.add_subcommand("split", "split a naive fusion table into full fusion rules");
  std::string split_path;
  bool no_theta = false;
  long long budget = 10'000'000;
  split->add_option("file,--input", split_path, "naive table or data file")->required();
  split->add_flag("--theta,!--no-theta", [&](std::int64_t c) { no_theta = c < 0; }, "filter by balancing with the file's twists (default on)");
  split->add_option("--node-budget", budget, "backtracking node limit");

  // pell
  auto* pell = app.add_subcommand("pell", "solutions of the Pell-type equations");
  std::string family = "a2-2c2";
  int count = 4;
  long limit = 10000;
  pell->add_option("--family", family, "a2-2c2, m-beta, beq0, z3-n0 or z3-n1")
      ->check(CLI::IsMember({"a2-2c2", "m-beta", "beq0", "z3-n0", "z3-n1"}));
  pell->add_option("--count", count, "number of solutions")->check(CLI::PositiveNumber);
  pell->add_option("--limit", limit, "search limit for beq0 and z3-n1")->check(CLI::PositiveNumber);

  // catalogue
  auto* cat = app.add_subcommand("catalogue", "known categories");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "entry names, optionally filtered");
  std::string filter;
  cat_list->add_option("filter", filter, "comma-separated tags, strata or names");
  auto* cat_show = cat->add_subcommand("show", "one entry");
  std::string entry;
  cat_show->add_option("name", entry)->required();
  auto* cat_export = cat->add_subcommand("export", "write every entry as a data file");
  std::string dir = "data";
  cat_export->add_option("dir", dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      auto file = data_from(read_json_file(verify_path));
      auto v = verify_all(file.data, expect);
      return out.emit(to_json(v), verify_text(v, file.data.name.empty() ? verify_path : file.data.name), v.pass() ? 0 : 1);
    }

    if (*enumerate) {
      if (stratum.empty()) throw CLI::ValidationError("enumerate", "a stratum is required");
      const SearchOptions opt{threads};
      if (stratum == "all") {
        auto rec = reconcile_rank8(opt, twist_order);
        json strata = json::array();
        std::string text;
        for (const auto& r : rec.strata) {
          strata.push_back(to_json(r));
          text += stratum_text(r);
        }
        text += "fusion classes:\n";
        for (const auto& c : rec.fusion_classes) text += "  " + c + "\n";
        for (const auto& u : rec.unmatched) text += "unmatched: " + u + "\n";
        json j{{"strata", strata}, {"fusion_classes", rec.fusion_classes}, {"unmatched", rec.unmatched}};
        return out.emit(j, text, 0);
      }
      std::string label;
      try {
        label = normalize_stratum(stratum);
      } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("stratum", e.what());
      }
      auto r = run_stratum(label, bound, opt);
      finish_stratum(r, threads, twist_order);
      return out.emit(to_json(r), stratum_text(r), 0);
    }

    if (*split) {
      auto file = naive_file_from(read_json_file(split_path));
      SplitOptions so;
      so.node_budget = budget;
      so.threads = threads;
      const bool use_theta = !no_theta && file.data && file.data->data.hatT;
      if (use_theta) so.theta = &file.data->data;
      std::vector<SplitSolution> sols;
      try {
        sols = split_naive(file.nhat, file.dual, so);
      } catch (const NoSolution& e) {
        json j{{"name", file.name}, {"balancing", use_theta}, {"classes", json::array()}, {"reason", e.what()}};
        return out.emit(j, file.name + ": no splitting (" + e.what() + ")\n", 1);
      }
      json cls = json::array();
      std::ostringstream os;
      os << file.name << ": " << sols.size() << " class(es)" << (use_theta ? " with balancing" : "") << "\n";
      for (size_t c = 0; c < sols.size(); ++c) {
        cls.push_back(to_json(sols[c]));
        os << " class " << c + 1 << " (" << sols[c].class_size << " raw solutions)\n";
        const int r = sols[c].tensor.r();
        for (int a = 1; a < r; ++a)
          for (int b = a; b < r; ++b) os << "  X" << a << " X" << b << " = " << product_string(sols[c].tensor, a, b) << "\n";
      }
      json j{{"name", file.name}, {"balancing", use_theta}, {"classes", cls}};
      return out.emit(j, os.str(), 0);
    }

    if (*pell) {
      json j;
      std::ostringstream os;
      if (family == "a2-2c2" || family == "m-beta") {
        const bool ac = family == "a2-2c2";
        auto fam = ac ? a_c_family() : m_beta_family();
        auto v = ac ? pell_a_c(count) : pell_m_beta(count);
        j = pairs_json(v);
        os << fam.equation << "\n";
        for (const auto& [x, y] : v) os << "  (" << x << ", " << y << ")\n";
      } else if (family == "beq0") {
        auto rep = verify_beq0(limit, threads);
        json sols = json::array();
        for (const auto& s : rep.solutions) sols.push_back({std::to_string(s[0]), std::to_string(s[1]), std::to_string(s[2])});
        j = {{"bound", rep.bound}, {"pairs_tested", rep.pairs_tested}, {"nonzero_b", rep.nonzero_b}, {"solutions", sols}};
        os << "a^2 - (b^2 + 2) c^2 = 2 with |a|,|b|,|c| <= " << limit << ": " << rep.solutions.size() << " solutions, "
           << rep.nonzero_b << " with b != 0\n";
        return out.emit(j, os.str(), rep.nonzero_b == 0 ? 0 : 1);
      } else {
        auto v = family == "z3-n0" ? n0_discriminant_solutions() : n1_discriminant_solutions(limit);
        j = json::array();
        for (long c : v) j.push_back(std::to_string(c));
        os << (family == "z3-n0" ? "(2c)^2 - 27 square:" : "5c^2 - 22c - 27 square:");
        for (long c : v) os << " " << c;
        os << "\n";
      }
      return out.emit(j, os.str(), 0);
    }

    if (*cat_list) {
      auto names = list_entries(filter);
      std::ostringstream os;
      json j = json::array();
      for (const auto& n : names) {
        const auto& e = load_entry(n);
        j.push_back({{"name", n}, {"stratum", e.stratum}, {"fusion_class", e.fusion_class}, {"tags", e.tags}});
        os << n << "  " << e.fusion_class << "  " << e.stratum << "\n";
      }
      return out.emit(j, os.str(), 0);
    }

    if (*cat_show) {
      const CatalogueEntry* e;
      try {
        e = &load_entry(entry);
      } catch (const UnknownEntry& ex) {
        throw CLI::ValidationError("name", ex.what());
      }
      std::ostringstream os;
      const auto& d = e->data;
      os << d.name << "  (" << e->source << ")\n  field " << d.field->name() << "\n  stratum " << e->stratum
         << "\n  fusion class " << e->fusion_class << "\n  S-hat:\n";
      for (const auto& row : d.hatS) {
        os << "   ";
        for (const auto& x : row) os << " [" << x.str() << "]";
        os << "\n";
      }
      os << "  theta turns:";
      for (const auto& t : e->theta_turns) os << " " << t.get_str();
      os << "\n";
      if (d.fusion)
        for (int a = 1; a < d.r; ++a)
          for (int b = a; b < d.r; ++b) os << "  X" << a << " X" << b << " = " << product_string(*d.fusion, a, b) << "\n";
      return out.emit(to_json(*e), os.str(), 0);
    }

    if (*cat_export) {
      std::filesystem::create_directories(dir);
      json written = json::array();
      for (const auto& n : entry_names()) {
        const auto& e = load_entry(n);
        const std::string path = (std::filesystem::path(dir) / (n + ".json")).string();
        std::ofstream(path) << dump(to_json(e.data, e.theta_turns));
        written.push_back(path);
      }
      // the naive table of PSU(2)_14, with its data attached for the balancing filter
      const auto& p = load_entry("psu2-14");
      NaiveFile nf{"psu2-14 naive", verlinde_naive(p.data), p.data.dual, DataFile{p.data, p.theta_turns}};
      const std::string path = (std::filesystem::path(dir) / "psu2-14-naive.json").string();
      std::ofstream(path) << dump(to_json(nf));
      written.push_back(path);
      std::string text;
      for (const auto& w : written) text += w.get<std::string>() + "\n";
      return out.emit(written, text, 0);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
