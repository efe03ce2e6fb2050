#include "pathpower.h"

#include <cstring>
#include <new>
#include <string>

#include "pathpower/embed.hpp"
#include "pathpower/oracle.hpp"
#include "pathpower/tournament.hpp"

using namespace pathpower;

struct pp_tournament {
  Tournament t;
};
struct pp_witness {
  Witness w;
};
struct pp_avoider_cert {
  AvoiderCertificate c;
};

namespace {

thread_local std::string g_last_error;

pp_status to_status(Status s) {
  switch (s) {
    case Status::ok: return PP_OK;
    case Status::invalid_parameter: return PP_ERR_INVALID_PARAMETER;
    case Status::invalid_vertex: return PP_ERR_INVALID_VERTEX;
    case Status::invalid_ordering: return PP_ERR_INVALID_ORDERING;
    case Status::parse_error: return PP_ERR_PARSE;
    case Status::unsupported_storage: return PP_ERR_UNSUPPORTED_STORAGE;
    case Status::capacity: return PP_ERR_CAPACITY;
    case Status::precondition: return PP_ERR_PRECONDITION;
    case Status::not_found: return PP_ERR_NOT_FOUND;
    case Status::not_locally_optimal: return PP_ERR_NOT_LOCALLY_OPTIMAL;
    case Status::rotation_precondition: return PP_ERR_ROTATION_PRECONDITION;
    case Status::invalid_certificate: return PP_ERR_INVALID_CERTIFICATE;
    case Status::step_failed: return PP_ERR_STEP_FAILED;
    case Status::verification_failed: return PP_ERR_VERIFICATION;
    case Status::internal: return PP_ERR_INTERNAL;
  }
  return PP_ERR_INTERNAL;
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    return PP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.status());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

WitnessMode from_c(pp_witness_mode m) {
  return m == PP_WITNESS_PLAIN ? WitnessMode::plain : WitnessMode::block_transitive;
}

EmbedParams from_c(const pp_embed_params& p) {
  EmbedParams out;
  out.k = p.k;
  out.t = p.t;
  out.a_star = p.a_star;
  out.blocks = p.blocks;
  out.ls_pass_budget =
      p.ls_pass_budget == PP_LS_PASSES_UNLIMITED ? EmbedParams::kUnlimitedPasses : p.ls_pass_budget;
  return out;
}

}  // namespace

extern "C" {

const char* pp_status_name(pp_status s) {
  switch (s) {
    case PP_OK: return "ok";
    case PP_ERR_INVALID_PARAMETER: return "invalid-parameter";
    case PP_ERR_INVALID_VERTEX: return "invalid-vertex";
    case PP_ERR_INVALID_ORDERING: return "invalid-ordering";
    case PP_ERR_PARSE: return "parse-error";
    case PP_ERR_UNSUPPORTED_STORAGE: return "unsupported-storage";
    case PP_ERR_CAPACITY: return "capacity";
    case PP_ERR_PRECONDITION: return "precondition";
    case PP_ERR_NOT_FOUND: return "not-found";
    case PP_ERR_NOT_LOCALLY_OPTIMAL: return "not-locally-optimal";
    case PP_ERR_ROTATION_PRECONDITION: return "rotation-precondition";
    case PP_ERR_INVALID_CERTIFICATE: return "invalid-certificate";
    case PP_ERR_STEP_FAILED: return "step-failed";
    case PP_ERR_VERIFICATION: return "verification-failed";
    case PP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pp_last_error_message(void) { return g_last_error.c_str(); }

void pp_string_free(char* s) { delete[] s; }

pp_status pp_generate(pp_model model, uint32_t n, uint64_t seed, pp_tournament** out) {
  return guarded([&] {
    Model m;
    switch (model) {
      case PP_MODEL_RANDOM: m = Model::random; break;
      case PP_MODEL_TRANSITIVE: m = Model::transitive; break;
      case PP_MODEL_C3CHAIN: m = Model::c3chain; break;
      case PP_MODEL_IMPLICIT_RANDOM: m = Model::implicit_random; break;
      default: fail(Status::invalid_parameter, "pp_generate: unknown model");
    }
    *out = new pp_tournament{Tournament::generate(m, n, seed)};
  });
}

void pp_tournament_free(pp_tournament* t) { delete t; }

uint32_t pp_tournament_order(const pp_tournament* t) { return t->t.order(); }

int pp_tournament_is_explicit(const pp_tournament* t) { return t->t.is_explicit() ? 1 : 0; }

pp_status pp_edge(const pp_tournament* t, uint32_t u, uint32_t v, int* out) {
  return guarded([&] { *out = t->t.edge(u, v) ? 1 : 0; });
}

pp_status pp_materialize(const pp_tournament* t, pp_tournament** out) {
  return guarded([&] { *out = new pp_tournament{t->t.materialize()}; });
}

pp_status pp_compose_forward(const pp_tournament* t1, const pp_tournament* t2,
                             pp_tournament** out) {
  return guarded([&] { *out = new pp_tournament{Tournament::compose_forward(t1->t, t2->t)}; });
}

pp_status pp_serialize(const pp_tournament* t, char** text) {
  return guarded([&] { *text = dup_string(t->t.serialize()); });
}

pp_status pp_parse(const char* text, pp_tournament** out) {
  return guarded([&] { *out = new pp_tournament{Tournament::parse(text)}; });
}

uint32_t pp_witness_k(const pp_witness* w) { return w->w.k; }

pp_witness_mode pp_witness_get_mode(const pp_witness* w) {
  return w->w.mode == WitnessMode::plain ? PP_WITNESS_PLAIN : PP_WITNESS_BLOCK_TRANSITIVE;
}

uint32_t pp_witness_size(const pp_witness* w) {
  return static_cast<uint32_t>(w->w.vertices.size());
}

const uint32_t* pp_witness_vertices(const pp_witness* w) { return w->w.vertices.data(); }

int pp_witness_is_partial(const pp_witness* w) { return w->w.partial ? 1 : 0; }

pp_status pp_witness_to_json(const pp_witness* w, char** line) {
  return guarded([&] { *line = dup_string(w->w.to_json()); });
}

pp_status pp_witness_from_json(const char* line, pp_witness** out) {
  return guarded([&] { *out = new pp_witness{Witness::from_json(line)}; });
}

void pp_witness_free(pp_witness* w) { delete w; }

pp_status pp_verify_power_path(const pp_tournament* t, const uint32_t* vertices, uint32_t len,
                               uint32_t k, pp_witness_mode mode, int* ok) {
  return guarded([&] {
    std::vector<uint32_t> w(vertices, vertices + len);
    *ok = verify_power_path(t->t, w, k, from_c(mode)) ? 1 : 0;
  });
}

pp_status pp_embed_params_default(uint32_t k, pp_embed_params* out) {
  return guarded([&] {
    EmbedParams p = EmbedParams::defaults(k);
    out->k = p.k;
    out->t = p.t;
    out->a_star = p.a_star;
    out->blocks = p.blocks;
    out->ls_pass_budget = PP_LS_PASSES_UNLIMITED;
  });
}

pp_status pp_embed_power_path(const pp_tournament* t, const pp_embed_params* params,
                              int guaranteed, pp_witness** out, char** trace_jsonl) {
  return guarded([&] {
    EmbedResult res = embed_power_path(t->t, from_c(*params), guaranteed != 0);
    *out = new pp_witness{std::move(res.witness)};
    if (trace_jsonl) *trace_jsonl = dup_string(res.trace.to_jsonl());
  });
}

pp_status pp_embed_square_path(const pp_tournament* t, pp_witness** out) {
  return guarded([&] { *out = new pp_witness{embed_square_path(t->t)}; });
}

pp_status pp_hamilton_path(const pp_tournament* t, pp_witness** out) {
  return guarded([&] { *out = new pp_witness{hamilton_path(t->t)}; });
}

pp_status pp_longest_power_path(const pp_tournament* t, uint32_t k, uint32_t early_exit_target,
                                uint32_t* max_vertices, uint64_t* nodes_explored,
                                pp_witness** witness) {
  return guarded([&] {
    OracleResult r = longest_power_path(t->t, k, early_exit_target);
    if (max_vertices) *max_vertices = r.max_vertices;
    if (nodes_explored) *nodes_explored = r.nodes_explored;
    if (witness)
      *witness = new pp_witness{Witness{k, WitnessMode::plain, std::move(r.witness), false}};
  });
}

pp_status pp_ell_exact(uint32_t n, uint32_t k, int allow_large, uint32_t shards,
                       uint32_t shard_index, uint32_t* out) {
  return guarded([&] { *out = ell_exact(n, k, allow_large != 0, shards, shard_index); });
}

pp_status pp_search_avoider(uint32_t k, uint32_t m, uint64_t trial_begin, uint64_t trial_end,
                            uint64_t seed, pp_avoider_cert** out) {
  return guarded(
      [&] { *out = new pp_avoider_cert{search_avoider(k, m, trial_begin, trial_end, seed)}; });
}

pp_status pp_make_certificate(const pp_tournament* t, uint32_t k, uint32_t m, uint64_t seed,
                              pp_avoider_cert** out) {
  return guarded([&] { *out = new pp_avoider_cert{make_certificate(t->t, k, m, seed)}; });
}

int pp_cert_verified(const pp_avoider_cert* c) { return c->c.verified ? 1 : 0; }
uint32_t pp_cert_k(const pp_avoider_cert* c) { return c->c.k; }
uint32_t pp_cert_m(const pp_avoider_cert* c) { return c->c.m; }
uint64_t pp_cert_seed(const pp_avoider_cert* c) { return c->c.seed; }
uint64_t pp_cert_trials_used(const pp_avoider_cert* c) { return c->c.trials_used; }

pp_status pp_cert_tournament(const pp_avoider_cert* c, pp_tournament** out) {
  return guarded([&] { *out = new pp_tournament{c->c.tournament}; });
}

pp_status pp_cert_serialize(const pp_avoider_cert* c, char** text) {
  return guarded([&] { *text = dup_string(c->c.serialize()); });
}

pp_status pp_cert_parse(const char* text, pp_avoider_cert** out) {
  return guarded([&] { *out = new pp_avoider_cert{AvoiderCertificate::parse(text)}; });
}

void pp_cert_free(pp_avoider_cert* c) { delete c; }

pp_status pp_certify_upper_bound(uint32_t k, uint32_t n, const pp_avoider_cert* block,
                                 pp_tournament** composed, uint32_t* bound, int* oracle_checked,
                                 uint32_t* oracle_value) {
  return guarded([&] {
    UpperBoundResult r = certify_upper_bound(k, n, block->c);
    if (bound) *bound = r.bound;
    if (oracle_checked) *oracle_checked = r.oracle_checked ? 1 : 0;
    if (oracle_value) *oracle_value = r.oracle_value;
    if (composed) *composed = new pp_tournament{std::move(r.tournament)};
  });
}

}  // extern "C"
