/* Copyright 2026 The PFS Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the private distributed-storage library.
 *
 * Every entry point returns a pfs_status; PFS_OK means success and anything
 * else is accompanied by a human-readable detail string available from
 * pfs_last_error() (thread-local, valid until the next failing call on the
 * same thread).  Strings returned through char** out-parameters are
 * heap-allocated and must be released with pfs_string_free().
 */

#ifndef PFS_H_
#define PFS_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef PFS_API
#define PFS_API __attribute__((visibility("default")))
#endif

/* Status values double as the CLI's exit codes. */
typedef enum pfs_status {
  PFS_OK = 0,
  PFS_ERR_INTERNAL = 1,   /* library invariant violation */
  PFS_ERR_VALIDATION = 2, /* bad parameters, malformed request, misuse */
  PFS_ERR_CAPACITY = 3,   /* file exceeds capacity, or too few shares */
  PFS_ERR_KEY_REUSE = 4,  /* one-time key material consumed twice */
  PFS_ERR_AUDIT = 5,      /* an audited security property failed */
  PFS_ERR_IO = 6          /* filesystem trouble or malformed record file */
} pfs_status;

PFS_API const char* pfs_status_name(pfs_status status);
PFS_API const char* pfs_last_error(void);
PFS_API const char* pfs_version(void);
PFS_API void pfs_string_free(char* str);

/* ---- field handle ----------------------------------------------------- */

/* GF(2^m) arithmetic, 1 <= m <= 8.  reduction_poly == 0 selects the default
 * polynomial for the width. */
typedef struct pfs_field pfs_field;

PFS_API pfs_status pfs_field_create(unsigned m, unsigned reduction_poly,
                                    pfs_field** out);
PFS_API void pfs_field_destroy(pfs_field* field);
PFS_API unsigned pfs_field_order(const pfs_field* field);
PFS_API pfs_status pfs_field_add(const pfs_field* field, unsigned a, unsigned b,
                                 unsigned* out);
PFS_API pfs_status pfs_field_mul(const pfs_field* field, unsigned a, unsigned b,
                                 unsigned* out);
PFS_API pfs_status pfs_field_inv(const pfs_field* field, unsigned a,
                                 unsigned* out);

/* ---- key ring handle --------------------------------------------------- */

typedef struct pfs_keyring pfs_keyring;

PFS_API pfs_status pfs_keyring_generate(const pfs_field* field, uint16_t user_id,
                                        unsigned servers, uint32_t n_symbols,
                                        int has_seed, uint64_t seed,
                                        pfs_keyring** out);
PFS_API void pfs_keyring_destroy(pfs_keyring* ring);
PFS_API uint32_t pfs_keyring_symbols(const pfs_keyring* ring);
/* Copies server_id's key into out (capacity symbols); consuming twice fails
 * with PFS_ERR_KEY_REUSE. */
PFS_API pfs_status pfs_keyring_consume(pfs_keyring* ring, unsigned server_id,
                                       uint8_t* out, size_t capacity);

/* ---- file-level protocol operations ------------------------------------ */

/* Writes u<user>_s<server>.key for servers 1..servers into out_dir. */
PFS_API pfs_status pfs_keygen(const char* out_dir, unsigned m, uint16_t user_id,
                              unsigned servers, uint32_t n_symbols,
                              int has_seed, uint64_t seed);

/* Splits input_path across the key set found in key_dir (u<user>_s1.key,
 * ..., contiguous) and writes u<user>_s<server>.msg files into out_dir.
 * Marks each key file consumed via a .used sidecar; reusing marked keys
 * fails with PFS_ERR_KEY_REUSE.  report_json (optional) receives the
 * measured-vs-optimal resource accounting. */
PFS_API pfs_status pfs_store(const char* input_path, const char* key_dir,
                             uint16_t user_id, unsigned threshold,
                             unsigned privacy, const char* out_dir,
                             int has_seed, uint64_t seed, char** report_json);

/* Server side: message file + that server's key file -> share file. */
PFS_API pfs_status pfs_ingest(const char* message_path, const char* key_path,
                              const char* out_path);

/* Rebuilds the original file from share files (any t of them). */
PFS_API pfs_status pfs_reconstruct(const char* const* share_paths, size_t count,
                                   const char* out_path, char** summary_json);

/* ---- audit / bounds / demo --------------------------------------------- */

/* params_json:
 *   {"field_m": 2, "servers": 3,
 *    "users": [{"user_id":1, "threshold":2, "privacy":1, "n_symbols":1}]}
 * break_mode: "none", "no-otp" or "asym" (NULL means "none").
 * passed receives 1/0; a clean run returns PFS_OK even when sabotage is
 * detected -- detection is the audit's job, PFS_ERR_AUDIT is reserved for
 * the CLI mapping of passed == 0. */
PFS_API pfs_status pfs_audit(const char* params_json, const char* break_mode,
                             char** report_json, int* passed);

/* request_json is either the params object above (optima + achievability
 * table) or {"frontier": {"field_m":8, "servers":5, "n_symbols":1024}} for
 * the (t, z) sweep. */
PFS_API pfs_status pfs_bounds(const char* request_json, char** table_json);

/* Runs a scenario end to end (see README for the schema); scenario_path NULL
 * selects a built-in default.  Artifacts land under out_dir. */
PFS_API pfs_status pfs_demo(const char* scenario_path, const char* out_dir,
                            char** summary_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PFS_H_ */
