#ifndef MACROATLAS_H
#define MACROATLAS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. 2, 3 and 4 match the command-line exit codes.
typedef enum MaStatus {
  MA_STATUS_OK = 0,
  MA_STATUS_NULL_POINTER = 1,
  MA_STATUS_VALIDATION = 2,
  MA_STATUS_CONVERGENCE = 3,
  MA_STATUS_IO = 4,
  MA_STATUS_UNKNOWN_FIELD = 5,
  MA_STATUS_UNKNOWN_NODE = 6,
  MA_STATUS_BUFFER_TOO_SMALL = 7,
  MA_STATUS_INVALID_UTF8 = 8,
  MA_STATUS_PANIC = 9,
} MaStatus;

// Opaque handle to the diagram graph.
typedef struct MaGraph MaGraph;

// Opaque parameter set.
typedef struct MaParams MaParams;

// Equilibrium state. Rates `nominal_rate` and `real_rate` are in percent
// points; `unemployment` and `inflation` are fractions.
typedef struct MaEconState {
  double output;
  double consumption;
  double investment;
  double saving;
  double price;
  double nominal_rate;
  double real_rate;
  double wage;
  double employment;
  double unemployment;
  double inflation;
  double full_employment_output;
  double leisure;
} MaEconState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into the library on this thread.
const char *ma_last_error_message(void);

// Default parameters. Release with `ma_params_free`.
struct MaParams *ma_params_new(void);

void ma_params_free(struct MaParams *params);

// Parses parameters from JSON with symbol keys (`"alpha"`, `"Ms"`, ...).
// Missing keys take default values; unknown keys are an error.
enum MaStatus ma_params_from_json(const char *json, struct MaParams **out);

// Serializes parameters to JSON. Release the string with `ma_string_free`.
enum MaStatus ma_params_to_json(const struct MaParams *params, char **out);

enum MaStatus ma_params_set(struct MaParams *params, const char *field, double value);

enum MaStatus ma_params_get(const struct MaParams *params, const char *field, double *out);

enum MaStatus ma_params_validate(const struct MaParams *params);

// AD meets short-run supply at the expected price level.
enum MaStatus ma_solve_short_run(const struct MaParams *params, struct MaEconState *out);

// Long-run equilibrium at full-employment output.
enum MaStatus ma_solve_long_run(const struct MaParams *params, struct MaEconState *out);

// IS-LM output and nominal rate (percent points) at price level `price`.
enum MaStatus ma_islm_solve(const struct MaParams *params,
                            double price,
                            double *output,
                            double *nominal_rate);

// The canonical 27-diagram graph. Release with `ma_graph_free`.
struct MaGraph *ma_graph_new(void);

void ma_graph_free(struct MaGraph *graph);

size_t ma_graph_node_count(const struct MaGraph *graph);

// Diagrams derived, directly or not, from `node`, in increasing id order.
enum MaStatus ma_graph_descendants(const struct MaGraph *graph,
                                   uint32_t node,
                                   uint32_t *out,
                                   size_t capacity,
                                   size_t *len);

// Diagrams to redraw after shocking `field`, in dependency order.
enum MaStatus ma_graph_propagate(const struct MaGraph *graph,
                                 const char *field,
                                 uint32_t *out,
                                 size_t capacity,
                                 size_t *len);

// Graphviz text of the graph. Release with `ma_string_free`.
enum MaStatus ma_graph_export_dot(const struct MaGraph *graph, char **out);

void ma_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MACROATLAS_H */
