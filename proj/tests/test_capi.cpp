#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "pathpower.h"

namespace {

struct TournamentHandle {
  pp_tournament* t = nullptr;
  ~TournamentHandle() { pp_tournament_free(t); }
};

struct WitnessHandle {
  pp_witness* w = nullptr;
  ~WitnessHandle() { pp_witness_free(w); }
};

std::string take(char* s) {
  std::string out(s);
  pp_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("generate, edge queries and serialization") {
  TournamentHandle h;
  REQUIRE(pp_generate(PP_MODEL_C3CHAIN, 3, 0, &h.t) == PP_OK);
  CHECK(pp_tournament_order(h.t) == 3);
  CHECK(pp_tournament_is_explicit(h.t) == 1);

  int dir = -1;
  CHECK(pp_edge(h.t, 2, 0, &dir) == PP_OK);
  CHECK(dir == 1);
  CHECK(pp_edge(h.t, 0, 2, &dir) == PP_OK);
  CHECK(dir == 0);
  CHECK(pp_edge(h.t, 0, 0, &dir) == PP_ERR_INVALID_VERTEX);
  CHECK(std::strlen(pp_last_error_message()) > 0);

  char* text = nullptr;
  REQUIRE(pp_serialize(h.t, &text) == PP_OK);
  CHECK(take(text) == "PTv1 3\n10\n1\n");
}

TEST_CASE("parse round trip and parse errors") {
  TournamentHandle h;
  REQUIRE(pp_parse("PTv1 3\n10\n1\n", &h.t) == PP_OK);
  CHECK(pp_tournament_order(h.t) == 3);
  pp_tournament* bad = nullptr;
  CHECK(pp_parse("PTv1 3\nxx\n1\n", &bad) == PP_ERR_PARSE);
  CHECK(bad == nullptr);  // out parameter untouched on failure
}

TEST_CASE("implicit generation and materialize") {
  TournamentHandle imp, exp, mat;
  REQUIRE(pp_generate(PP_MODEL_IMPLICIT_RANDOM, 30, 5, &imp.t) == PP_OK);
  REQUIRE(pp_generate(PP_MODEL_RANDOM, 30, 5, &exp.t) == PP_OK);
  CHECK(pp_tournament_is_explicit(imp.t) == 0);
  REQUIRE(pp_materialize(imp.t, &mat.t) == PP_OK);
  char *a = nullptr, *b = nullptr;
  REQUIRE(pp_serialize(mat.t, &a) == PP_OK);
  REQUIRE(pp_serialize(exp.t, &b) == PP_OK);
  CHECK(take(a) == take(b));
}

TEST_CASE("compose and status names") {
  TournamentHandle c3, c6;
  REQUIRE(pp_generate(PP_MODEL_C3CHAIN, 3, 0, &c3.t) == PP_OK);
  REQUIRE(pp_compose_forward(c3.t, c3.t, &c6.t) == PP_OK);
  CHECK(pp_tournament_order(c6.t) == 6);
  CHECK(std::string(pp_status_name(PP_OK)) == "ok");
  CHECK(std::string(pp_status_name(PP_ERR_CAPACITY)) == "capacity");
}

TEST_CASE("witness accessors and verification") {
  TournamentHandle h;
  REQUIRE(pp_generate(PP_MODEL_TRANSITIVE, 9, 0, &h.t) == PP_OK);
  WitnessHandle w;
  REQUIRE(pp_embed_square_path(h.t, &w.w) == PP_OK);
  CHECK(pp_witness_k(w.w) == 2);
  CHECK(pp_witness_get_mode(w.w) == PP_WITNESS_PLAIN);
  CHECK(pp_witness_size(w.w) == 9);
  CHECK(pp_witness_is_partial(w.w) == 0);

  int ok = 0;
  REQUIRE(pp_verify_power_path(h.t, pp_witness_vertices(w.w), pp_witness_size(w.w), 2,
                               PP_WITNESS_PLAIN, &ok) == PP_OK);
  CHECK(ok == 1);

  char* json = nullptr;
  REQUIRE(pp_witness_to_json(w.w, &json) == PP_OK);
  std::string line = take(json);
  WitnessHandle back;
  REQUIRE(pp_witness_from_json(line.c_str(), &back.w) == PP_OK);
  CHECK(pp_witness_size(back.w) == 9);

  uint32_t fake[] = {0, 0, 1};
  REQUIRE(pp_verify_power_path(h.t, fake, 3, 2, PP_WITNESS_PLAIN, &ok) == PP_OK);
  CHECK(ok == 0);
}

TEST_CASE("embeddings through the C surface") {
  TournamentHandle h;
  REQUIRE(pp_generate(PP_MODEL_TRANSITIVE, 100, 0, &h.t) == PP_OK);
  pp_embed_params params;
  REQUIRE(pp_embed_params_default(2, &params) == PP_OK);
  CHECK(params.t == 8192);
  CHECK(params.ls_pass_budget == PP_LS_PASSES_UNLIMITED);
  params.t = 8;
  params.a_star = 5;
  params.blocks = 5;
  WitnessHandle w;
  char* trace = nullptr;
  REQUIRE(pp_embed_power_path(h.t, &params, 0, &w.w, &trace) == PP_OK);
  CHECK(pp_witness_size(w.w) == 19);
  CHECK(pp_witness_get_mode(w.w) == PP_WITNESS_BLOCK_TRANSITIVE);
  std::string tr = take(trace);
  CHECK(tr.find("final_chunk") != std::string::npos);

  WitnessHandle ham;
  REQUIRE(pp_hamilton_path(h.t, &ham.w) == PP_OK);
  CHECK(pp_witness_size(ham.w) == 100);
}

TEST_CASE("oracle and extremal calls") {
  TournamentHandle h;
  REQUIRE(pp_generate(PP_MODEL_C3CHAIN, 6, 0, &h.t) == PP_OK);
  uint32_t best = 0;
  uint64_t nodes = 0;
  WitnessHandle w;
  REQUIRE(pp_longest_power_path(h.t, 2, 0, &best, &nodes, &w.w) == PP_OK);
  CHECK(best == 4);
  CHECK(pp_witness_size(w.w) == 4);

  uint32_t ell = 0;
  REQUIRE(pp_ell_exact(5, 2, 0, 1, 0, &ell) == PP_OK);
  CHECK(ell == 4);
  CHECK(pp_ell_exact(7, 2, 0, 1, 0, &ell) == PP_ERR_CAPACITY);

  TournamentHandle big;
  REQUIRE(pp_generate(PP_MODEL_RANDOM, 30, 0, &big.t) == PP_OK);
  CHECK(pp_longest_power_path(big.t, 2, 0, &best, &nodes, nullptr) == PP_ERR_CAPACITY);
}

TEST_CASE("certificates end to end") {
  TournamentHandle c3;
  REQUIRE(pp_generate(PP_MODEL_C3CHAIN, 3, 0, &c3.t) == PP_OK);
  pp_avoider_cert* cert = nullptr;
  REQUIRE(pp_make_certificate(c3.t, 2, 3, 7, &cert) == PP_OK);
  CHECK(pp_cert_verified(cert) == 1);
  CHECK(pp_cert_k(cert) == 2);
  CHECK(pp_cert_m(cert) == 3);
  CHECK(pp_cert_seed(cert) == 7);

  char* text = nullptr;
  REQUIRE(pp_cert_serialize(cert, &text) == PP_OK);
  std::string serialized = take(text);
  pp_avoider_cert* back = nullptr;
  REQUIRE(pp_cert_parse(serialized.c_str(), &back) == PP_OK);
  CHECK(pp_cert_verified(back) == 1);

  TournamentHandle composed;
  uint32_t bound = 0, oracle_value = 0;
  int checked = 0;
  REQUIRE(pp_certify_upper_bound(2, 9, cert, &composed.t, &bound, &checked, &oracle_value) ==
          PP_OK);
  CHECK(bound == 6);
  CHECK(checked == 1);
  CHECK(oracle_value == 6);
  CHECK(pp_tournament_order(composed.t) == 9);

  pp_cert_free(back);
  pp_cert_free(cert);
}

TEST_CASE("search avoider through the C surface") {
  pp_avoider_cert* cert = nullptr;
  REQUIRE(pp_search_avoider(5, 15, 0, 100, 12345, &cert) == PP_OK);
  CHECK(pp_cert_verified(cert) == 1);
  TournamentHandle block;
  REQUIRE(pp_cert_tournament(cert, &block.t) == PP_OK);
  CHECK(pp_tournament_order(block.t) == 16);
  pp_cert_free(cert);

  pp_avoider_cert* none = nullptr;
  CHECK(pp_search_avoider(5, 2, 5, 5, 1, &none) == PP_ERR_INVALID_PARAMETER);  // empty range
}
