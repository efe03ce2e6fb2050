/* C interface to the pathpower library: tournament generation, power-of-path
 * embeddings, exact extremal oracles, and certified constructions.
 *
 * All objects are opaque handles freed by the matching *_free function.
 * Every fallible call returns a pp_status; on failure the out parameters are
 * left untouched and pp_last_error_message() describes the problem for the
 * calling thread. */

#ifndef PATHPOWER_H
#define PATHPOWER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PP_OK = 0,
  PP_ERR_INVALID_PARAMETER,
  PP_ERR_INVALID_VERTEX,
  PP_ERR_INVALID_ORDERING,
  PP_ERR_PARSE,
  PP_ERR_UNSUPPORTED_STORAGE,
  PP_ERR_CAPACITY,
  PP_ERR_PRECONDITION,
  PP_ERR_NOT_FOUND,
  PP_ERR_NOT_LOCALLY_OPTIMAL,
  PP_ERR_ROTATION_PRECONDITION,
  PP_ERR_INVALID_CERTIFICATE,
  PP_ERR_STEP_FAILED,
  PP_ERR_VERIFICATION,
  PP_ERR_INTERNAL
} pp_status;

typedef enum {
  PP_MODEL_RANDOM = 0,
  PP_MODEL_TRANSITIVE,
  PP_MODEL_C3CHAIN,
  PP_MODEL_IMPLICIT_RANDOM
} pp_model;

typedef enum { PP_WITNESS_PLAIN = 0, PP_WITNESS_BLOCK_TRANSITIVE } pp_witness_mode;

typedef struct pp_tournament pp_tournament;
typedef struct pp_witness pp_witness;
typedef struct pp_avoider_cert pp_avoider_cert;

const char* pp_status_name(pp_status s);
const char* pp_last_error_message(void);
void pp_string_free(char* s);

/* ---- tournaments ---- */

pp_status pp_generate(pp_model model, uint32_t n, uint64_t seed, pp_tournament** out);
void pp_tournament_free(pp_tournament* t);
uint32_t pp_tournament_order(const pp_tournament* t);
int pp_tournament_is_explicit(const pp_tournament* t);
/* *out is 1 iff the edge u->v is present. */
pp_status pp_edge(const pp_tournament* t, uint32_t u, uint32_t v, int* out);
pp_status pp_materialize(const pp_tournament* t, pp_tournament** out);
pp_status pp_compose_forward(const pp_tournament* t1, const pp_tournament* t2,
                             pp_tournament** out);
/* PTv1 text; free with pp_string_free. */
pp_status pp_serialize(const pp_tournament* t, char** text);
pp_status pp_parse(const char* text, pp_tournament** out);

/* ---- witnesses ---- */

uint32_t pp_witness_k(const pp_witness* w);
pp_witness_mode pp_witness_get_mode(const pp_witness* w);
uint32_t pp_witness_size(const pp_witness* w);
const uint32_t* pp_witness_vertices(const pp_witness* w);
int pp_witness_is_partial(const pp_witness* w);
pp_status pp_witness_to_json(const pp_witness* w, char** line);
pp_status pp_witness_from_json(const char* line, pp_witness** out);
void pp_witness_free(pp_witness* w);

pp_status pp_verify_power_path(const pp_tournament* t, const uint32_t* vertices, uint32_t len,
                               uint32_t k, pp_witness_mode mode, int* ok);

/* ---- embeddings ---- */

#define PP_LS_PASSES_UNLIMITED (~(uint64_t)0)

typedef struct {
  uint32_t k;
  uint64_t t;       /* window unit */
  uint64_t a_star;  /* working-set size */
  uint32_t blocks;  /* window block count */
  /* Local-search pass budget for the initial ordering:
   * PP_LS_PASSES_UNLIMITED runs to the fixpoint, 0 keeps the identity. */
  uint64_t ls_pass_budget;
} pp_embed_params;

pp_status pp_embed_params_default(uint32_t k, pp_embed_params* out);

/* Witness is verified (block-transitive) before it is returned. When
 * trace_jsonl is non-NULL it receives one JSON line per step; free with
 * pp_string_free. */
pp_status pp_embed_power_path(const pp_tournament* t, const pp_embed_params* params,
                              int guaranteed, pp_witness** out, char** trace_jsonl);
pp_status pp_embed_square_path(const pp_tournament* t, pp_witness** out);
pp_status pp_hamilton_path(const pp_tournament* t, pp_witness** out);

/* ---- oracles and extremal search ---- */

pp_status pp_longest_power_path(const pp_tournament* t, uint32_t k, uint32_t early_exit_target,
                                uint32_t* max_vertices, uint64_t* nodes_explored,
                                pp_witness** witness);

/* allow_large enables n == 7. Shard s of `shards` covers tournament codes
 * congruent to s; results across shards combine by minimum. */
pp_status pp_ell_exact(uint32_t n, uint32_t k, int allow_large, uint32_t shards,
                       uint32_t shard_index, uint32_t* out);

pp_status pp_search_avoider(uint32_t k, uint32_t m, uint64_t trial_begin, uint64_t trial_end,
                            uint64_t seed, pp_avoider_cert** out);
/* Oracle-verifies that t has no k-th power path on m vertices and wraps it
 * as a certificate (verified flag reports the outcome). */
pp_status pp_make_certificate(const pp_tournament* t, uint32_t k, uint32_t m, uint64_t seed,
                              pp_avoider_cert** out);
int pp_cert_verified(const pp_avoider_cert* c);
uint32_t pp_cert_k(const pp_avoider_cert* c);
uint32_t pp_cert_m(const pp_avoider_cert* c);
uint64_t pp_cert_seed(const pp_avoider_cert* c);
uint64_t pp_cert_trials_used(const pp_avoider_cert* c);
pp_status pp_cert_tournament(const pp_avoider_cert* c, pp_tournament** out);
pp_status pp_cert_serialize(const pp_avoider_cert* c, char** text);
pp_status pp_cert_parse(const char* text, pp_avoider_cert** out);
void pp_cert_free(pp_avoider_cert* c);

pp_status pp_certify_upper_bound(uint32_t k, uint32_t n, const pp_avoider_cert* block,
                                 pp_tournament** composed, uint32_t* bound, int* oracle_checked,
                                 uint32_t* oracle_value);

#ifdef __cplusplus
}
#endif

#endif /* PATHPOWER_H */
