#include <stdio.h>
#include <string.h>
#include "garside.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        GarsideStatus s_ = (call);                                         \
        if (s_ != GARSIDE_STATUS_OK) {                                     \
            fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_, garside_last_error()); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    GarsideSystem *sys = NULL;
    CHECK(garside_system_new("A3", &sys));
    if (garside_system_rank(sys) != 3) return 2;

    GarsideElement *g = NULL, *d = NULL, *prod = NULL, *inv = NULL, *back = NULL;
    CHECK(garside_element_parse(sys, "1 2 1 -3", &g));
    CHECK(garside_element_delta_power(sys, 2, &d));
    CHECK(garside_element_multiply(g, d, &prod));
    CHECK(garside_element_inverse(prod, &inv));
    CHECK(garside_element_multiply(inv, prod, &back));

    int64_t inf = 0, sup = 0;
    uint64_t len = 0;
    CHECK(garside_element_bounds(back, &inf, &sup, &len));
    if (inf != 0 || sup != 0 || len != 0) return 3;

    char *text = NULL;
    CHECK(garside_element_render(prod, &text));
    printf("%s\n", text);
    garside_string_free(text);

    GarsideElement *bad = NULL;
    if (garside_element_parse(sys, "1 9", &bad) != GARSIDE_STATUS_INVALID_ATOM) return 4;
    if (strlen(garside_last_error()) == 0) return 5;

    const char *argv[] = {"nf", "A3", "1 2 1"};
    int code = -1;
    char *out = NULL, *err = NULL;
    CHECK(garside_cli_run(3, argv, &code, &out, &err));
    if (code != 0) return 6;
    printf("%s", out);
    garside_string_free(out);
    garside_string_free(err);

    garside_element_free(g);
    garside_element_free(d);
    garside_element_free(prod);
    garside_element_free(inv);
    garside_element_free(back);
    garside_system_free(sys);
    return 0;
}
