/* Minimal round trip through the C API: build delta(3,2,1) over the fig1
 * base, extract a witness from a constant 2-coloring, verify it, then verify
 * a tampered copy and print the checker's complaint.
 *
 * Build from the repository root:
 *   cargo build -p gallai-capi
 *   cc crates/capi/examples/demo.c -Icrates/capi/include \
 *      target/debug/libgallai_capi.a -lpthread -ldl -lm -o demo
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "gallai.h"

static const char *COLORING =
    "gallai-coloring v1\n"
    "k 2\n"
    "0 0 0\n"
    "10 0 0\n"
    "10 5 0\n"
    "20 0 0\n"
    "20 5 0\n"
    "20 10 0\n";

int main(void) {
    GallaiEngine *engine = gallai_engine_new("fig1", 0);
    if (!engine) {
        fprintf(stderr, "engine: %s\n", gallai_last_error());
        return 1;
    }

    char *set = NULL;
    char *witness = NULL;
    int rc = 1;

    if (gallai_build_set(engine, 3, 2, 1, &set) != GALLAI_STATUS_OK) {
        fprintf(stderr, "build: %s\n", gallai_last_error());
        goto done;
    }
    printf("-- delta(3,2,1) --\n%s", set);

    if (gallai_extract(engine, 3, 2, 1, COLORING, &witness) != GALLAI_STATUS_OK) {
        fprintf(stderr, "extract: %s\n", gallai_last_error());
        goto done;
    }
    printf("-- witness --\n%s", witness);

    if (gallai_verify(engine, witness, COLORING, set) != GALLAI_STATUS_OK) {
        fprintf(stderr, "verify: %s\n", gallai_last_error());
        goto done;
    }
    printf("witness verifies\n");

    /* Break the scalar ladder and watch the checker object. */
    char *tampered = malloc(strlen(witness) + 1);
    if (!tampered)
        goto done;
    strcpy(tampered, witness);
    char *spot = strstr(tampered, "lambda 1 1");
    if (spot)
        spot[9] = '5';
    if (gallai_verify(engine, tampered, COLORING, set) == GALLAI_STATUS_INVALID)
        printf("tampered witness rejected: %s\n", gallai_last_error());
    free(tampered);

    rc = 0;
done:
    gallai_string_free(witness);
    gallai_string_free(set);
    gallai_engine_free(engine);
    return rc;
}
