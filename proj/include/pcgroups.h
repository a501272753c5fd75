#ifndef PCGROUPS_H
#define PCGROUPS_H

/* C interface to the p-group tree and measure engine.  All structured
 * results come back as JSON (or DOT/CSV) strings owned by the library;
 * release them with pcg_string_free.  Functions return PCG_OK on success,
 * PCG_ERR_VALIDATION on bad input, PCG_ERR_BUDGET when a budget was
 * exhausted (partial output is still written where documented), and
 * PCG_ERR_INTERNAL for everything else.  pcg_last_error() describes the
 * most recent failure on the calling thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  PCG_OK = 0,
  PCG_ERR_INTERNAL = 1,
  PCG_ERR_VALIDATION = 2,
  PCG_ERR_BUDGET = 3
};

const char* pcg_last_error(void);
void pcg_string_free(char* s);

/* p, g, c and the basic sizes of the class-c free quotient as JSON:
 * {p, g, c, order_exp, phi_size, x_size, y_size}. */
int pcg_free_quotient_info(int p, int g, int c, char** out_json);

/* Report for a pc presentation file:
 * {order_exp, p_class, d, r, h, y, aut_sigma_order, schur_class}. */
int pcg_group_report_file(const char* path, char** out_json);

/* Measured descendant tree. */
typedef struct pcg_tree pcg_tree;
int pcg_tree_build(int p, int g, int max_class, int max_order_exp, int ancestors_only,
                   int threads, pcg_tree** out);
/* format: "json" or "dot" */
int pcg_tree_export(const pcg_tree* tree, const char* format, char** out_doc);
/* 1 when some frontier was cut by the order or node budget */
int pcg_tree_budget_exhausted(const pcg_tree* tree);
void pcg_tree_free(pcg_tree* tree);

/* IPAD measure table as a JSON array of {ipad, num, den, decimal, status}.
 * targets_json: JSON array of IPAD strings, or NULL to track everything
 * encountered.  Returns PCG_ERR_BUDGET (with output) when entries are
 * lower bounds. */
int pcg_ipad_table(int p, int g, int max_class, int max_order_exp,
                   const char* targets_json, int threads, char** out_json);

/* Exhaustive relator-tuple census at class c:
 * {"total_tuples": n, "classes": {fingerprint: {num, den}}}. */
int pcg_oracle_exhaust(int p, int g, int c, char** out_json);

/* Seeded sampling oracle:
 * {"n": n, "classes": {fingerprint: {estimate, stderr, hits, n}}}. */
int pcg_oracle_sample(int p, int g, int c, long long n, uint64_t seed, int threads,
                      char** out_json);

/* Census CSV -> predicted-vs-observed report ("json" or "csv").  The
 * predictions are computed for the IPADs named in the census within the
 * given budget. */
int pcg_census_report(const char* census_csv_path, int p, int g, int max_class,
                      int max_order_exp, int threads, const char* format, char** out_doc);

#ifdef __cplusplus
}
#endif

#endif /* PCGROUPS_H */
