#include "afinv.h"
#include <stdio.h>
#include <string.h>

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,   \
                    afinv_last_error_message());                     \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    AfinvSpecimen *a = NULL, *b = NULL;
    AfinvBundle *bundle = NULL;
    char *s = NULL;
    size_t n = 0;

    CHECK(afinv_specimen_parse("m=0,3,2", &a) == AFINV_STATUS_OK);
    CHECK(afinv_specimen_rank(a, &n) == AFINV_STATUS_OK && n == 3);
    CHECK(afinv_bundle_new(a, &bundle) == AFINV_STATUS_OK);
    CHECK(afinv_bundle_tau(bundle, &s) == AFINV_STATUS_OK);
    CHECK(strcmp(s, "9/4") == 0);
    afinv_string_free(s);
    CHECK(afinv_bundle_torsion_dim(bundle, 2, &n) == AFINV_STATUS_OK);
    CHECK(afinv_bundle_torsion_dim(bundle, 4, &n) == AFINV_STATUS_INVALID_ARGUMENT);

    uint64_t m[] = {1, 1, 2};
    AfinvVerdict v;
    CHECK(afinv_specimen_from_m(m, 3, &b) == AFINV_STATUS_OK);
    CHECK(afinv_compare(a, b, &v, NULL) == AFINV_STATUS_OK);
    CHECK(v == AFINV_VERDICT_NON_ISOMORPHIC);

    uint64_t bad[] = {0, 2};
    AfinvSpecimen *c = NULL;
    CHECK(afinv_specimen_from_m(bad, 2, &c) == AFINV_STATUS_INVALID_SPECIMEN);
    CHECK(c == NULL);
    CHECK(strstr(afinv_last_error_message(), "GcdNotOne") != NULL);
    CHECK(afinv_specimen_rank(NULL, &n) == AFINV_STATUS_NULL_ARGUMENT);

    CHECK(afinv_diagram_dot(a, 6, &s) == AFINV_STATUS_OK);
    CHECK(strncmp(s, "digraph bratteli {", 18) == 0);
    afinv_string_free(s);

    afinv_bundle_free(bundle);
    afinv_specimen_free(a);
    afinv_specimen_free(b);
    afinv_specimen_free(NULL);
    printf("ok %s\n", afinv_version());
    return 0;
}
