#ifndef HEISCALC_H
#define HEISCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_UTF8 = 2,
  HC_STATUS_PARSE = 3,
  HC_STATUS_RESONANCE = 4,
  HC_STATUS_DOMAIN = 5,
  HC_STATUS_MISMATCH = 6,
  HC_STATUS_PANIC = 7,
} HcStatus;

// Dimension and density weights used to elaborate expressions.
typedef struct HcContext HcContext;

// A weight-tagged differential operator.
typedef struct HcOp HcOp;

// A symbol polynomial.
typedef struct HcSymbol HcSymbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Owned by the library.
const char *hc_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void hc_string_free(char *s);

// Creates a context. `lambda` and `mu` are rationals such as `"1/3"`; null means `0`.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum HcStatus hc_context_new(size_t ell,
                             const char *lambda,
                             const char *mu,
                             struct HcContext **out);

// # Safety
// `ctx` must be null or a handle from [`hc_context_new`], not yet freed.
void hc_context_free(struct HcContext *ctx);

// Parses an operator expression such as `"z*Dz^2"` or `"Xf{x1*y1}"`.
//
// # Safety
// `ctx` must be a live context, `src` NUL-terminated, `out` writable.
enum HcStatus hc_op_parse(const struct HcContext *ctx, const char *src, struct HcOp **out);

// # Safety
// `op` must be null or an operator handle, not yet freed.
void hc_op_free(struct HcOp *op);

// Normal-ordered text form; free with [`hc_string_free`]. Null if `op` is null.
//
// # Safety
// `op` must be null or a live operator handle.
char *hc_op_to_string(const struct HcOp *op);

// `a` after `b`. Weights must chain: `mu(b) = lambda(a)`.
//
// # Safety
// `a`, `b` must be live operator handles, `out` writable.
enum HcStatus hc_op_compose(const struct HcOp *a, const struct HcOp *b, struct HcOp **out);

// Order `k` and Heisenberg order `d` of a nonzero operator.
//
// # Safety
// `op` must be a live operator handle; `k`, `d` writable.
enum HcStatus hc_op_bidegree(const struct HcOp *op, uint32_t *k, uint32_t *d);

// Subsymbol of an operator of order at most `k`, an element of `Sigma^{k-1, 2(k-1)}`.
//
// # Safety
// `op` must be a live operator handle, `out` writable.
enum HcStatus hc_subsymbol(const struct HcOp *op, uint32_t k, struct HcSymbol **out);

// Parses a symbol in `zeta, alpha<i>, beta<i>` or `xiz, xix<i>, xiy<i>`.
//
// # Safety
// `ctx` must be a live context, `src` NUL-terminated, `out` writable.
enum HcStatus hc_symbol_parse(const struct HcContext *ctx, const char *src, struct HcSymbol **out);

// # Safety
// `s` must be null or a symbol handle, not yet freed.
void hc_symbol_free(struct HcSymbol *s);

// # Safety
// `s` must be null or a live symbol handle.
char *hc_symbol_to_string(const struct HcSymbol *s);

// Contact-projectively equivariant quantization at the context weights.
//
// # Safety
// `ctx`, `sym` must be live handles, `out` writable.
enum HcStatus hc_quantize(const struct HcContext *ctx,
                          const struct HcSymbol *sym,
                          struct HcOp **out);

// # Safety
// `delta` must be NUL-terminated; `out` writable.
enum HcStatus hc_is_contact_resonant(size_t ell, const char *delta, bool *out);

// # Safety
// `delta` must be NUL-terminated; `out` writable.
enum HcStatus hc_is_projectively_resonant(size_t ell, const char *delta, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEISCALC_H */
