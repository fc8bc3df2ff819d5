#include "splitkit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "splitkit/counting.hpp"
#include "splitkit/error.hpp"
#include "splitkit/families.hpp"
#include "splitkit/game.hpp"
#include "splitkit/json_io.hpp"
#include "splitkit/kernels.hpp"
#include "splitkit/service.hpp"

namespace splitkit {

namespace {

using nlohmann::json;

struct Report {
  json data = json::object();
  std::string text;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.data.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << '\n';
    };
    if (!r.csv_header.empty()) {
      line(r.csv_header);
      for (const auto& row : r.csv_rows) line(row);
    } else {
      line({"key", "value"});
      for (const auto& [key, value] : r.data.items()) line({key, scalar_text(value)});
    }
    return;
  }
  out << r.text;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<unsigned> parse_dims(const std::string& text) {
  std::vector<unsigned> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      dims.push_back(static_cast<unsigned>(std::stoul(part)));
    } catch (const std::exception&) {
      throw ContractViolation("grid dimensions look like 3x4, got \"" + text + "\"");
    }
  }
  return dims;
}

// Board sources shared by several subcommands.
struct BoardInput {
  std::string board_json;
  std::string sets_file;
  std::string grid;
  bool diagonals = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--board", board_json, "Board as JSON: {\"k\":3,\"sets\":[[1,2],[2,3]]} or a preset object");
    cmd->add_option("--sets-file", sets_file, "File holding a board in the same JSON form");
    cmd->add_option("--grid", grid, "Grid preset such as 3x3 or 2x2x2");
    cmd->add_flag("--diagonals", diagonals, "Add both diagonals to a square 2D grid");
  }

  bool given() const { return !board_json.empty() || !sets_file.empty() || !grid.empty(); }

  Family load() const {
    if (!grid.empty()) return grid_board(parse_dims(grid), diagonals);
    if (!sets_file.empty()) {
      std::ifstream in(sets_file);
      if (!in) throw ContractViolation("cannot read " + sets_file);
      try {
        return board_from_json(json::parse(in));
      } catch (const json::exception& e) {
        throw ContractViolation(sets_file + ": " + e.what());
      }
    }
    if (!board_json.empty()) {
      try {
        return board_from_json(json::parse(board_json));
      } catch (const json::exception& e) {
        throw ContractViolation(std::string("--board: ") + e.what());
      }
    }
    throw ContractViolation("no board given (use --board, --sets-file or --grid)");
  }
};

std::vector<Player> parse_players(const std::string& text) {
  if (text == "both") return {Player::Split, Player::Skew};
  const auto p = parse_player(text);
  if (!p) throw ContractViolation("expected split, skew or both, got \"" + text + "\"");
  return {*p};
}

SizeMode parse_mode(const std::string& text) {
  if (text == "exactly") return SizeMode::Exactly;
  if (text == "at-most") return SizeMode::AtMost;
  throw ContractViolation("mode must be exactly or at-most");
}

std::string column_string(std::uint32_t c, unsigned n) {
  std::string s;
  for (unsigned i = 0; i < n; ++i) s += ((c >> i) & 1U) ? '1' : '0';
  return s;
}

json minresult_json(const MinResult& r) {
  json mins = json::array();
  for (const auto& m : r.all_minimizers) mins.push_back(m.sizes());
  return {{"count", count_string(r.count)}, {"arrangement", r.arrangement.sizes()}, {"allMinimizers", mins}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splitting families, splitter counts and the splitting game", "splitkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  bool long_mode = false;
  unsigned threads = 0;
  std::string kernel;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--long", long_mode, "Allow heavy searches beyond the default limits");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--kernel", kernel, "Force a kernel backend")->check(CLI::IsMember({"scalar", "avx2"}));

  Report report;
  int status = 0;
  std::function<void()> action;

  // verify-family
  auto* verify = app.add_subcommand("verify-family", "Check whether a family splits every subset of [k]");
  unsigned vf_k = 0;
  bool vf_standard = false;
  unsigned vf_t = 0;
  std::string vf_mode = "exactly";
  BoardInput vf_board;
  verify->add_option("--k", vf_k, "Ground set size (with --standard)");
  verify->add_flag("--standard", vf_standard, "Use the standard family on [k]");
  verify->add_option("--t", vf_t, "Also check t-splitting");
  verify->add_option("--mode", vf_mode, "exactly or at-most (with --t)");
  vf_board.add_to(verify);
  verify->callback([&] {
    action = [&] {
      const Family f = vf_standard ? standard_family(vf_k) : vf_board.load();
      const auto witness = find_unsplit_subset(f);
      report.data = board_to_json(f);
      report.data["splitting"] = !witness.has_value();
      report.data["uniform"] = is_uniform(f);
      report.text = "splitting: " + yes_no(!witness) + "\n";
      if (witness) {
        report.data["unsplitSubset"] = witness->elements();
        report.text += "unsplit subset: " + witness->to_string() + "\n";
      } else if (f.k() + 1 <= kMaxExhaustiveGround && f.size() < 32) {
        const bool ext = is_extendable(f);
        report.data["extendable"] = ext;
        report.text += "extendable: " + yes_no(ext) + "\n";
      }
      report.text += "uniform: " + yes_no(is_uniform(f)) + "\n";
      if (vf_t > 0) {
        const SizeMode mode = parse_mode(vf_mode);
        const bool ok = is_t_splitting_family(f, vf_t, mode);
        report.data["tSplitting"] = {{"t", vf_t}, {"mode", std::string(to_string(mode))}, {"holds", ok}};
        report.text += std::string(to_string(mode)) + " " + std::to_string(vf_t) + "-splitting: " + yes_no(ok) + "\n";
      }
      report.text += "family: " + f.to_string() + "\n";
    };
  });

  // enumerate-minimal
  auto* enumerate = app.add_subcommand("enumerate-minimal", "Equivalence classes of minimum-size splitting families");
  unsigned em_k = 0;
  enumerate->add_option("--k", em_k, "Ground set size")->required();
  enumerate->callback([&] {
    action = [&] {
      const auto classes = enumerate_minimal_splitting_families(em_k, {threads, long_mode});
      json list = json::array();
      report.text = "k=" + std::to_string(em_k) + ": " + std::to_string(classes.size()) + " class" +
                    (classes.size() == 1 ? "" : "es") + " of size " + std::to_string((em_k + 1) / 2) + "\n";
      report.csv_header = {"class", "standard", "uniform", "sets"};
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        list.push_back({{"sets", c.canonical.to_sets()}, {"uniform", c.uniform}, {"standard", c.standard_equivalent}});
        report.text += "  " + std::string(c.standard_equivalent ? "standard   " : "nonstandard") +
                       (c.uniform ? " uniform     " : " non-uniform ") + c.canonical.to_string() + "\n";
        report.csv_rows.push_back({std::to_string(i + 1), yes_no(c.standard_equivalent), yes_no(c.uniform),
                                   c.canonical.to_string()});
      }
      report.data = {{"k", em_k}, {"size", (em_k + 1) / 2}, {"classes", list}};
    };
  });

  // hamming
  auto* hamming = app.add_subcommand("hamming", "Hamming-cube picture of a family's incidence columns");
  unsigned hm_k = 0;
  BoardInput hm_board;
  hamming->add_option("--k", hm_k, "Use the standard family on [k]");
  hm_board.add_to(hamming);
  hamming->callback([&] {
    action = [&] {
      const Family f = hm_board.given() ? hm_board.load() : standard_family(hm_k);
      const HammingRep rep = hamming_representation(f);
      json cols = json::array();
      report.csv_header = {"element", "column", "degree"};
      unsigned max_degree = 0;
      for (unsigned e = 0; e < rep.columns.size(); ++e) {
        const unsigned deg = rep.degree(rep.columns[e]);
        max_degree = std::max(max_degree, deg);
        cols.push_back(column_string(rep.columns[e], rep.n));
        report.csv_rows.push_back({std::to_string(e + 1), column_string(rep.columns[e], rep.n), std::to_string(deg)});
      }
      const bool connected = is_connected(rep);
      const auto y = find_forbidden_y(rep);
      report.data = {{"family", board_to_json(f)},
                     {"columns", cols},
                     {"vertices", rep.vertices().size()},
                     {"edges", rep.edge_count()},
                     {"maxDegree", max_degree},
                     {"connected", connected}};
      report.text = "family: " + f.to_string() + "\ncolumns: " + join(cols.get<std::vector<std::string>>(), " ") +
                    "\nvertices: " + std::to_string(rep.vertices().size()) +
                    ", edges: " + std::to_string(rep.edge_count()) + ", max degree: " + std::to_string(max_degree) +
                    "\nconnected: " + yes_no(connected) + "\n";
      if (y) {
        std::vector<std::string> vs;
        for (auto v : y->vertices) vs.push_back(column_string(v, rep.n));
        report.data["forbiddenY"] = {{"type", std::string(1, to_char(y->kind))}, {"vertices", vs}};
        report.text += "forbidden Y: type (" + std::string(1, to_char(y->kind)) + ") " + join(vs, " ") + "\n";
      } else {
        report.data["forbiddenY"] = nullptr;
        report.text += "forbidden Y: none\n";
      }
      if (f.k() <= 16 && f.size() <= 8) {
        const auto cls = classify_connected_le4_minimal(f);
        report.data["classification"] = std::string(to_string(cls));
        report.text += "classification: " + std::string(to_string(cls)) + "\n";
      }
    };
  });

  // count-splitters
  auto* count = app.add_subcommand("count-splitters", "Number of sets splitting every member of a family");
  BoardInput cs_board;
  std::string cs_regions;
  std::vector<std::uint64_t> cs_arrangement;
  cs_board.add_to(count);
  count->add_option("--regions", cs_regions, "Venn region sizes as a JSON array of length 2^n");
  count->add_option("--arrangement", cs_arrangement, "Two-set arrangement a1,b,a2,d")->delimiter(',')->expected(4);
  count->callback([&] {
    action = [&] {
      if (!cs_arrangement.empty()) {
        const Arrangement2 a{cs_arrangement[0], cs_arrangement[1], cs_arrangement[2], cs_arrangement[3]};
        const BigCount c = splitters_two_set(a);
        report.data = {{"arrangement", arrangement_to_json(a)}, {"count", count_string(c)}};
        report.text = "splitters: " + count_string(c) + "\n";
        try {
          const double approx = approx_splitters_two_set(a);
          report.data["approximation"] = approx;
          report.text += "approximation: " + std::to_string(approx) + "\n";
        } catch (const DomainError&) {
          report.data["approximation"] = nullptr;
        }
      } else if (!cs_regions.empty()) {
        RegionVector r;
        try {
          r = regions_from_json(json::parse(cs_regions));
        } catch (const json::exception& e) {
          throw ContractViolation(std::string("--regions: ") + e.what());
        }
        const BigCount c = count_splitters_regions(r);
        report.data = {{"regions", r.sizes()}, {"count", count_string(c)}};
        report.text = "splitters: " + count_string(c) + "\n";
      } else {
        const Family f = cs_board.load();
        const BigCount c = count_splitters(f, threads);
        report.data = {{"family", board_to_json(f)}, {"count", count_string(c)}};
        report.text = "splitters: " + count_string(c) + "\n";
      }
    };
  });

  // min-arrangement
  auto* minarr = app.add_subcommand("min-arrangement", "Family of 1, 2 or 3 sets with the fewest splitters");
  unsigned ma_sets = 0;
  unsigned ma_k = 0;
  minarr->add_option("--sets", ma_sets, "Number of sets")->required()->check(CLI::Range(1, 3));
  minarr->add_option("--k", ma_k, "Ground set size")->required();
  minarr->callback([&] {
    action = [&] {
      MinResult r;
      if (ma_sets == 1) r = min_one_set(ma_k);
      if (ma_sets == 2) r = min_two_set(ma_k);
      if (ma_sets == 3) r = min_three_set(ma_k, {threads, long_mode});
      report.data = minresult_json(r);
      report.data["sets"] = ma_sets;
      report.data["k"] = ma_k;
      report.text = "count: " + count_string(r.count) + "\narrangement: " + r.arrangement.to_string() + "\n";
      report.csv_header = {"minimizer", "regions"};
      for (std::size_t i = 0; i < r.all_minimizers.size(); ++i) {
        report.csv_rows.push_back({std::to_string(i + 1), r.all_minimizers[i].to_string()});
      }
      report.text += "minimizers (up to relabelling the sets): " + std::to_string(r.all_minimizers.size()) + "\n";
      if (ma_sets == 2) {
        const Arrangement2 t = theorem_two_set_arrangement(ma_k);
        bool all_match = true;
        for (const auto& m : r.all_minimizers) all_match = all_match && matches_two_set_theorem(Arrangement2::from_regions(m));
        report.data["theoremArrangement"] = arrangement_to_json(t);
        report.data["allMatchTheorem"] = all_match;
        report.text += "theorem arrangement: " + t.to_string() + " (every minimizer a permutation: " +
                       yes_no(all_match) + ")\n";
      }
      if (ma_sets == 3 && ma_k >= 4) {
        const bool fig = matches_figure5(r, ma_k);
        report.data["patternMatch"] = fig;
        report.text += "repeating pattern among minimizers: " + yes_no(fig) + "\n";
      }
    };
  });

  // verify-lemmas
  auto* lemmas = app.add_subcommand("verify-lemmas", "Exhaustively check the two-set point-moving inequalities");
  unsigned vl_k = 0;
  lemmas->add_option("--k", vl_k, "Ground set size")->required();
  lemmas->callback([&] {
    action = [&] {
      const auto violations = verify_point_moving_lemmas(vl_k);
      json list = json::array();
      report.csv_header = {"lemma", "lhs", "lhs_count", "rhs", "rhs_count"};
      for (const auto& v : violations) {
        list.push_back(v.to_string());
        report.csv_rows.push_back(
            {v.lemma, v.lhs.to_string(), count_string(v.lhs_count), v.rhs.to_string(), count_string(v.rhs_count)});
      }
      report.data = {{"k", vl_k}, {"violations", list}};
      report.text = "k=" + std::to_string(vl_k) + ": " + std::to_string(violations.size()) + " violations\n";
      for (const auto& v : violations) report.text += "  " + v.to_string() + "\n";
      if (!violations.empty()) status = 1;
    };
  });

  // min-t-splitting
  auto* tsplit = app.add_subcommand("min-t-splitting", "Least size of a t-splitting or <=t-splitting family");
  unsigned ts_k = 0;
  unsigned ts_t = 4;
  std::string ts_mode = "exactly";
  tsplit->add_option("--k", ts_k, "Ground set size")->required();
  tsplit->add_option("--t", ts_t, "Subset size");
  tsplit->add_option("--mode", ts_mode, "exactly or at-most");
  tsplit->callback([&] {
    action = [&] {
      const SizeMode mode = parse_mode(ts_mode);
      const auto r = min_t_splitting_size(ts_k, ts_t, mode, threads);
      report.data = {{"k", ts_k}, {"t", ts_t}, {"mode", std::string(to_string(mode))}, {"size", r.size},
                     {"witness", board_to_json(r.witness)}};
      report.text = "size: " + std::to_string(r.size) + "\nwitness: " + r.witness.to_string() + "\n";
    };
  });

  // solve-game
  auto* solve = app.add_subcommand("solve-game", "Winner of the splitting game under perfect play");
  BoardInput sg_board;
  std::string sg_first = "both";
  sg_board.add_to(solve);
  solve->add_option("--first", sg_first, "split, skew or both");
  solve->callback([&] {
    action = [&] {
      const Family b = sg_board.load();
      json results = json::array();
      report.csv_header = {"first", "winner", "principal"};
      for (Player p : parse_players(sg_first)) {
        const Solution s = solve_game(b, p, {long_mode});
        const json principal = s.principal ? json(*s.principal) : json(nullptr);
        results.push_back({{"first", std::string(to_string(p))},
                           {"winner", std::string(to_string(s.winner))},
                           {"principal", principal}});
        report.text += "first=" + std::string(to_string(p)) + ": " + std::string(to_string(s.winner)) + " wins" +
                       (s.principal ? ", opening move " + std::to_string(*s.principal) : "") + "\n";
        report.csv_rows.push_back({std::string(to_string(p)), std::string(to_string(s.winner)),
                                   s.principal ? std::to_string(*s.principal) : ""});
      }
      report.data = {{"board", board_to_json(b)}, {"results", results}};
      if (b.size() <= 8) report.data["reduced"] = board_to_json(reduce_board(b));
    };
  });

  // pairing
  auto* pairing = app.add_subcommand("pairing", "Search for a pairing strategy");
  BoardInput pr_board;
  std::string pr_player = "both";
  pr_board.add_to(pairing);
  pairing->add_option("--player", pr_player, "split, skew or both");
  pairing->callback([&] {
    action = [&] {
      const Family b = pr_board.load();
      json list = json::array();
      report.csv_header = {"player", "pairs"};
      for (Player p : parse_players(pr_player)) {
        const auto found = find_pairing_strategy(b, p);
        list.push_back(found ? pairing_to_json(*found)
                             : json{{"player", std::string(to_string(p))}, {"pairs", nullptr}});
        report.text += std::string(to_string(p)) + ": " + (found ? found->to_string() : "no pairing") + "\n";
        report.csv_rows.push_back({std::string(to_string(p)), found ? found->to_string() : ""});
      }
      report.data = {{"board", board_to_json(b)}, {"pairings", list}};
    };
  });

  // census
  auto* cens = app.add_subcommand("census", "Share of reduced n-set boards won by Split");
  unsigned ce_sets = 0;
  cens->add_option("--sets", ce_sets, "Number of sets")->required()->check(CLI::Range(1, 3));
  cens->callback([&] {
    action = [&] {
      const CensusResult c = census(ce_sets);
      json boards = json::array();
      report.csv_header = {"regions", "winner", "board"};
      for (const auto& e : c.entries) {
        boards.push_back({{"regions", e.regions.sizes()},
                          {"winner", std::string(to_string(e.winner))},
                          {"board", board_to_json(e.board)}});
        report.csv_rows.push_back({e.regions.to_string(), std::string(to_string(e.winner)), e.board.to_string()});
      }
      report.data = {{"sets", ce_sets},
                     {"total", c.total},
                     {"splitWins", c.split_wins},
                     {"fraction", c.fraction()},
                     {"boards", boards}};
      report.text = c.fraction() + "\n";
    };
  });

  // tictactoe
  auto* ttt = app.add_subcommand("tictactoe", "Splitting tic-tac-toe on an m x n grid of rows and columns");
  unsigned tt_m = 0;
  unsigned tt_n = 0;
  bool tt_diag = false;
  ttt->add_option("--m", tt_m, "Rows")->required();
  ttt->add_option("--n", tt_n, "Columns")->required();
  ttt->add_flag("--diagonals", tt_diag, "Include both diagonals (square boards)");
  ttt->callback([&] {
    action = [&] {
      const Family b = grid_board({tt_m, tt_n}, tt_diag);
      const Player w_split = solve_game(b, Player::Split, {long_mode}).winner;
      const Player w_skew = solve_game(b, Player::Skew, {long_mode}).winner;
      std::string summary;
      if (w_split == w_skew) {
        summary = std::string(to_string(w_split));
      } else {
        summary = w_split == Player::Skew ? "Player II" : "Player I";
      }
      report.data = {{"m", tt_m},
                     {"n", tt_n},
                     {"diagonals", tt_diag},
                     {"k", b.k()},
                     {"winnerSplitFirst", std::string(to_string(w_split))},
                     {"winnerSkewFirst", std::string(to_string(w_skew))},
                     {"summary", summary}};
      report.text = std::to_string(tt_m) + "x" + std::to_string(tt_n) + (tt_diag ? " with diagonals" : "") + ": " +
                    summary + " wins (Split first: " + std::string(to_string(w_split)) +
                    ", Skew first: " + std::string(to_string(w_skew)) + ")\n";
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
  int sv_port = 8080;
  std::string sv_host = "127.0.0.1";
  std::string sv_log;
  serve->add_option("--port", sv_port, "TCP port (0 picks a free one)");
  serve->add_option("--host", sv_host, "Interface to bind");
  serve->add_option("--event-log", sv_log, "Append game events as JSON lines to this file");
  serve->callback([&] {
    action = [&] {
      GameService service(sv_log.empty() ? std::nullopt : std::optional<std::string>(sv_log));
      HttpServer server(service);
      const int port = server.bind(sv_host, sv_port);
      out << "listening on http://" << sv_host << ":" << port << std::endl;
      server.listen();
      format = "none";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!kernel.empty()) kernels::set_backend(kernel == "avx2" ? kernels::Backend::Avx2 : kernels::Backend::Scalar);
    action();
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (format != "none") emit(report, format, out);
  return status;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"splitkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace splitkit
