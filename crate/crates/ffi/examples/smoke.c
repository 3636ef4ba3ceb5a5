#include <stdio.h>
#include "ordcurve.h"

int main(void) {
    uint64_t k0;
    int64_t pi;
    if (ord_genus_bound(4, 15, &k0, &pi) != ORD_STATUS_OK) {
        fprintf(stderr, "%s\n", ord_last_error());
        return 1;
    }
    printf("k0=%llu pi=%lld\n", (unsigned long long)k0, (long long)pi);

    OrdFixture *fx = NULL;
    bool pass = false;
    char *report = NULL;
    if (ord_fixture_load("ex2", &fx) != ORD_STATUS_OK ||
        ord_fixture_verify(fx, 20, 1, 32003, &pass, &report) != ORD_STATUS_OK) {
        fprintf(stderr, "%s\n", ord_last_error());
        return 1;
    }
    printf("ex2 pass=%d\n", pass);
    ord_string_free(report);
    ord_fixture_free(fx);
    return pass ? 0 : 1;
}
