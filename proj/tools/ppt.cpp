// ppt: command-line driver for the pathpower library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathpower.h"

namespace {

int exit_code(pp_status st) {
  switch (st) {
    case PP_OK: return 0;
    case PP_ERR_INVALID_PARAMETER: return 2;
    case PP_ERR_CAPACITY: return 3;
    case PP_ERR_VERIFICATION: return 4;
    default: return 1;
  }
}

struct CliError {
  int code;
};

void check(pp_status st) {
  if (st == PP_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", pp_status_name(st), pp_last_error_message());
  throw CliError{exit_code(st)};
}

void usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  throw CliError{2};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) usage_error("cannot write " + path);
  out << text;
}

pp_model parse_model(const std::string& name) {
  if (name == "random") return PP_MODEL_RANDOM;
  if (name == "transitive") return PP_MODEL_TRANSITIVE;
  if (name == "c3chain") return PP_MODEL_C3CHAIN;
  if (name == "implicit" || name == "implicit_random") return PP_MODEL_IMPLICIT_RANDOM;
  usage_error("unknown model '" + name + "'");
  return PP_MODEL_RANDOM;
}

// Shared tournament input: either a PTv1 file or generation parameters.
struct TournamentInput {
  std::string in_path;
  std::string model = "random";
  uint32_t n = 0;
  uint64_t seed = 0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--in", in_path, "PTv1 tournament file");
    cmd->add_option("--model", model, "generator model when --in is absent")
        ->check(CLI::IsMember({"random", "transitive", "c3chain", "implicit", "implicit_random"}));
    cmd->add_option("--n", n, "vertex count for generation");
    cmd->add_option("--seed", seed, "generator seed");
  }

  pp_tournament* load() const {
    pp_tournament* t = nullptr;
    if (!in_path.empty()) {
      check(pp_parse(read_file(in_path).c_str(), &t));
    } else {
      if (n == 0) usage_error("need --in or --model/--n");
      check(pp_generate(parse_model(model), n, seed, &t));
    }
    return t;
  }
};

std::string take_string(char* s) {
  std::string out(s);
  pp_string_free(s);
  return out;
}

void print_witness(pp_witness* w, const std::string& out_path) {
  char* line = nullptr;
  check(pp_witness_to_json(w, &line));
  write_output(out_path, take_string(line) + "\n");
}

int cmd_gen(const TournamentInput& input, const std::string& out_path) {
  if (input.model == "implicit" || input.model == "implicit_random")
    usage_error("implicit tournaments have no file form; use them via --model on other commands");
  pp_tournament* t = input.load();
  char* text = nullptr;
  check(pp_serialize(t, &text));
  write_output(out_path, take_string(text));
  pp_tournament_free(t);
  return 0;
}

int cmd_embed(const TournamentInput& input, const std::string& mode, uint32_t k, uint64_t t_param,
              uint64_t a_star, uint32_t blocks, bool guaranteed, uint64_t ls_passes,
              const std::string& out_path, const std::string& trace_path) {
  pp_tournament* t = input.load();
  pp_witness* w = nullptr;
  if (mode == "hamilton") {
    check(pp_hamilton_path(t, &w));
  } else if (mode == "square") {
    check(pp_embed_square_path(t, &w));
  } else {
    pp_embed_params params;
    check(pp_embed_params_default(k, &params));
    if (t_param) params.t = t_param;
    if (a_star) params.a_star = a_star;
    if (blocks) params.blocks = blocks;
    params.ls_pass_budget = ls_passes;
    char* trace = nullptr;
    check(pp_embed_power_path(t, &params, guaranteed ? 1 : 0,
                              &w, trace_path.empty() ? nullptr : &trace));
    if (trace) write_output(trace_path, take_string(trace));
  }
  print_witness(w, out_path);
  pp_witness_free(w);
  pp_tournament_free(t);
  return 0;
}

int cmd_oracle(const TournamentInput& input, uint32_t k, uint32_t early_exit, bool json) {
  pp_tournament* t = input.load();
  uint32_t max_vertices = 0;
  uint64_t nodes = 0;
  pp_witness* w = nullptr;
  check(pp_longest_power_path(t, k, early_exit, &max_vertices, &nodes, &w));
  char* line = nullptr;
  check(pp_witness_to_json(w, &line));
  std::string wit = take_string(line);
  if (json)
    std::printf("{\"k\":%u,\"max_vertices\":%u,\"nodes_explored\":%llu,\"witness\":%s}\n", k,
                max_vertices, static_cast<unsigned long long>(nodes), wit.c_str());
  else
    std::printf("max_vertices=%u nodes_explored=%llu\nwitness %s\n", max_vertices,
                static_cast<unsigned long long>(nodes), wit.c_str());
  pp_witness_free(w);
  pp_tournament_free(t);
  return 0;
}

int cmd_ell_exact(uint32_t n, uint32_t k, bool long_run, uint32_t shards, uint32_t shard_index,
                  bool json) {
  uint32_t ell = 0;
  check(pp_ell_exact(n, k, long_run ? 1 : 0, shards, shard_index, &ell));
  if (json)
    std::printf("{\"n\":%u,\"k\":%u,\"ell\":%u}\n", n, k, ell);
  else
    std::printf("%u\n", ell);
  return 0;
}

int cmd_search_avoider(uint32_t k, uint32_t m, uint64_t trials, uint64_t seed, uint32_t shards,
                       uint32_t shard_index, const std::string& out_path, bool json) {
  if (shards == 0 || shard_index >= shards) usage_error("need 0 <= shard-index < shards");
  // Contiguous split of the trial range; shard outputs combine by first success.
  uint64_t base = trials / shards, extra = trials % shards;
  uint64_t begin = shard_index * base + (shard_index < extra ? shard_index : extra);
  uint64_t end = begin + base + (shard_index < extra ? 1 : 0);
  pp_avoider_cert* cert = nullptr;
  check(pp_search_avoider(k, m, begin, end, seed, &cert));
  int found = pp_cert_verified(cert);
  if (json)
    std::printf("{\"k\":%u,\"m\":%u,\"found\":%s,\"trials_used\":%llu}\n", k, m,
                found ? "true" : "false",
                static_cast<unsigned long long>(pp_cert_trials_used(cert)));
  else
    std::printf("%s after %llu trials\n", found ? "found verified avoider" : "no avoider found",
                static_cast<unsigned long long>(pp_cert_trials_used(cert)));
  if (found) {
    char* text = nullptr;
    check(pp_cert_serialize(cert, &text));
    write_output(out_path, take_string(text));
  }
  pp_cert_free(cert);
  return found ? 0 : 1;
}

int cmd_compose(const std::string& in1, const std::string& in2, const std::string& out_path) {
  pp_tournament *t1 = nullptr, *t2 = nullptr, *c = nullptr;
  check(pp_parse(read_file(in1).c_str(), &t1));
  check(pp_parse(read_file(in2).c_str(), &t2));
  check(pp_compose_forward(t1, t2, &c));
  char* text = nullptr;
  check(pp_serialize(c, &text));
  write_output(out_path, take_string(text));
  pp_tournament_free(t1);
  pp_tournament_free(t2);
  pp_tournament_free(c);
  return 0;
}

int cmd_verify(const TournamentInput& input, uint32_t k, const std::string& witness_path) {
  pp_tournament* t = input.load();
  pp_witness* w = nullptr;
  check(pp_witness_from_json(read_file(witness_path).c_str(), &w));
  if (pp_witness_k(w) != k) usage_error("--k does not match the witness");
  int ok = 0;
  check(pp_verify_power_path(t, pp_witness_vertices(w), pp_witness_size(w), k,
                             pp_witness_get_mode(w), &ok));
  pp_witness_free(w);
  pp_tournament_free(t);
  if (!ok) {
    std::fprintf(stderr, "verification failed\n");
    return 4;
  }
  std::printf("ok\n");
  return 0;
}

int cmd_table(uint32_t k, uint32_t nmax, bool long_run, bool json) {
  if (k != 2) usage_error("table supports --k 2 only");
  bool mismatch = false;
  if (!json) std::printf("%4s %6s %10s %s\n", "n", "ell_2", "ceil(2n/3)", "status");
  for (uint32_t n = 1; n <= nmax; ++n) {
    uint32_t ell = 0;
    check(pp_ell_exact(n, 2, long_run ? 1 : 0, 1, 0, &ell));
    uint32_t expected = (2 * n + 2) / 3;
    bool match = ell == expected;
    mismatch = mismatch || !match;
    if (json)
      std::printf("{\"n\":%u,\"ell\":%u,\"expected\":%u,\"match\":%s}\n", n, ell, expected,
                  match ? "true" : "false");
    else
      std::printf("%4u %6u %10u %s\n", n, ell, expected, match ? "MATCH" : "MISMATCH");
  }
  return mismatch ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tournament path-power toolkit"};
  app.require_subcommand(1);

  TournamentInput gen_in, embed_in, oracle_in, verify_in;
  std::string out_path, trace_path, witness_path, in1, in2;
  std::string embed_mode = "square";
  uint32_t k = 2, nmax = 6, early_exit = 0, ell_n = 0, m = 0;
  uint32_t shards = 1, shard_index = 0, blocks = 0;
  uint64_t t_param = 0, a_star = 0, trials = 100000, sa_seed = 0;
  uint64_t ls_passes = PP_LS_PASSES_UNLIMITED;
  bool guaranteed = false, long_run = false, json = false;

  CLI::App* gen = app.add_subcommand("gen", "generate a tournament and write PTv1");
  gen_in.add_options(gen);
  gen->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* embed = app.add_subcommand("embed", "embed a path power and print the witness");
  embed_in.add_options(embed);
  embed->add_option("--mode", embed_mode, "hamilton|square|power")
      ->check(CLI::IsMember({"hamilton", "square", "power"}));
  embed->add_option("--k", k, "power order (power mode)");
  embed->add_option("--t", t_param, "window unit override");
  embed->add_option("--a-star", a_star, "working-set size override");
  embed->add_option("--blocks", blocks, "window block count override");
  embed->add_flag("--mode-guaranteed", guaranteed, "require the guaranteed-regime contract");
  embed->add_option("--ls-passes", ls_passes, "local-search pass budget (0 keeps input order)");
  embed->add_option("--out", out_path, "witness output path (default stdout)");
  embed->add_option("--trace", trace_path, "write the embedding trace (power mode)");

  CLI::App* oracle = app.add_subcommand("oracle", "exact longest power path");
  oracle_in.add_options(oracle);
  oracle->add_option("--k", k, "power order")->required();
  oracle->add_option("--early-exit", early_exit, "stop once this many vertices are reached");
  oracle->add_flag("--json", json, "JSON-lines output");

  CLI::App* ell = app.add_subcommand("ell-exact", "exact extremal value over all tournaments");
  ell->add_option("--n", ell_n, "vertex count")->required();
  ell->add_option("--k", k, "power order")->required();
  ell->add_flag("--long-run", long_run, "allow n=7");
  ell->add_option("--shards", shards, "shard count");
  ell->add_option("--shard-index", shard_index, "this shard");
  ell->add_flag("--json", json, "JSON-lines output");

  CLI::App* sa = app.add_subcommand("search-avoider", "find a power-path-avoiding block");
  sa->add_option("--k", k, "power order")->required();
  sa->add_option("--m", m, "vertex bound to avoid")->required();
  sa->add_option("--trials", trials, "total trial budget");
  sa->add_option("--seed", sa_seed, "search seed");
  sa->add_option("--shards", shards, "shard count");
  sa->add_option("--shard-index", shard_index, "this shard");
  sa->add_option("--out", out_path, "certificate output path (default stdout)");
  sa->add_flag("--json", json, "JSON-lines output");

  CLI::App* compose = app.add_subcommand("compose", "forward composition of two tournaments");
  compose->add_option("--in1", in1, "first PTv1 file")->required();
  compose->add_option("--in2", in2, "second PTv1 file")->required();
  compose->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "check a witness against a tournament");
  verify_in.add_options(verify);
  verify->add_option("--k", k, "power order")->required();
  verify->add_option("--witness", witness_path, "witness JSON file")->required();

  CLI::App* table = app.add_subcommand("table", "exact extremal table vs the closed formula");
  table->add_option("--k", k, "power order (2 only)");
  table->add_option("--nmax", nmax, "largest n");
  table->add_flag("--long-run", long_run, "allow n=7");
  table->add_flag("--json", json, "JSON-lines output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_in, out_path);
    if (embed->parsed())
      return cmd_embed(embed_in, embed_mode, k, t_param, a_star, blocks, guaranteed, ls_passes,
                       out_path, trace_path);
    if (oracle->parsed()) return cmd_oracle(oracle_in, k, early_exit, json);
    if (ell->parsed()) return cmd_ell_exact(ell_n, k, long_run, shards, shard_index, json);
    if (sa->parsed())
      return cmd_search_avoider(k, m, trials, sa_seed, shards, shard_index, out_path, json);
    if (compose->parsed()) return cmd_compose(in1, in2, out_path);
    if (verify->parsed()) return cmd_verify(verify_in, k, witness_path);
    if (table->parsed()) return cmd_table(k, nmax, long_run, json);
  } catch (const CliError& e) {
    return e.code;
  }
  return 2;
}
