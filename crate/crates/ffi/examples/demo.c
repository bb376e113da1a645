#include <stdio.h>
#include "heiscalc.h"

static int check(HcStatus s) {
    if (s != HC_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)s, hc_last_error());
        return 1;
    }
    return 0;
}

int main(void) {
    HcContext *ctx = NULL;
    HcOp *op = NULL;
    HcSymbol *sym = NULL;
    if (check(hc_context_new(1, "1/2", "1/2", &ctx))) return 1;
    if (check(hc_op_parse(ctx, "z*Dz^2", &op))) return 1;

    uint32_t k, d;
    if (check(hc_op_bidegree(op, &k, &d))) return 1;
    printf("bidegree %u %u\n", k, d);

    if (check(hc_subsymbol(op, 2, &sym))) return 1;
    char *s = hc_symbol_to_string(sym);
    printf("subsymbol %s\n", s);
    hc_string_free(s);

    bool r;
    if (check(hc_is_contact_resonant(1, "1/2", &r))) return 1;
    printf("resonant %d\n", r);

    HcOp *bad = NULL;
    HcStatus st = hc_op_parse(ctx, "Dx3", &bad);
    printf("parse status %d\n", (int)st);

    hc_symbol_free(sym);
    hc_op_free(op);
    hc_context_free(ctx);
    return 0;
}
