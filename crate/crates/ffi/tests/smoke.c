#include <stdio.h>
#include <string.h>

#include "workbench.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        wb_status s_ = (call);                                             \
        if (s_ != WB_OK) {                                                 \
            fprintf(stderr, "%s -> %d: %s\n", #call, s_, wb_last_error()); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

static const char *ARROW =
    "{\"objects\": [\"a\", \"b\"],"
    " \"morphisms\": [{\"name\": \"1a\", \"src\": \"a\", \"tgt\": \"a\"},"
    "               {\"name\": \"1b\", \"src\": \"b\", \"tgt\": \"b\"},"
    "               {\"name\": \"f\", \"src\": \"a\", \"tgt\": \"b\"}],"
    " \"identities\": {\"a\": \"1a\", \"b\": \"1b\"},"
    " \"compose\": []}";

int main(void) {
    WbCategory *cat = NULL, *back = NULL;
    WbSSet *n = NULL, *sd = NULL;
    bool poset = false, acyclic = false, passed = false;
    size_t objects = 0, morphisms = 0, betti[2] = {9, 9};
    char *json = NULL;

    CHECK(wb_category_from_json(ARROW, &cat));
    CHECK(wb_category_counts(cat, &objects, &morphisms));
    CHECK(wb_category_classify(cat, &poset, &acyclic));
    if (objects != 2 || morphisms != 3 || !poset || !acyclic) return 2;

    CHECK(wb_nerve(cat, 2, &n));
    CHECK(wb_sset_subdivide(n, &sd));
    CHECK(wb_sset_betti(sd, betti, 2));
    if (betti[0] != 1 || betti[1] != 0) return 3;
    CHECK(wb_sset_categorify(sd, &back));
    CHECK(wb_category_to_json(back, &json));
    if (strstr(json, "\"objects\"") == NULL) return 4;
    wb_string_free(json);

    if (wb_category_from_json("{", &cat) != WB_MALFORMED || wb_last_error()[0] == '\0') return 5;
    if (wb_category_classify(NULL, &poset, &acyclic) != WB_NULL_ARGUMENT) return 6;

    CHECK(wb_verify("csd2-posets", 0, 0, &passed, &json));
    if (!passed) return 7;
    wb_string_free(json);

    wb_category_free(back);
    wb_sset_free(sd);
    wb_sset_free(n);
    wb_category_free(cat);
    printf("ok %s\n", wb_version());
    return 0;
}
