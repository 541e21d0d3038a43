/* Loads a ring and bimodule, prints H^3 and checks the realized model of the
 * zero cocycle. Build against the static library:
 *   cc examples/smoke.c -Iinclude ../../target/debug/libcrext.a -lpthread -ldl -lm
 */
#include <stdio.h>
#include <stdlib.h>

#include "crext.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    rewind(f);
    char *buf = malloc((size_t)n + 1);
    if (buf && fread(buf, 1, (size_t)n, f) != (size_t)n) {
        free(buf);
        buf = NULL;
    }
    if (buf) buf[n] = '\0';
    fclose(f);
    return buf;
}

static int fail(CrextStatus s) {
    const char *msg = crext_last_error();
    fprintf(stderr, "status %d: %s\n", (int)s, msg ? msg : "");
    return 1;
}

int main(int argc, char **argv) {
    if (argc != 3) {
        fprintf(stderr, "usage: %s RING.json BIMOD.json\n", argv[0]);
        return 2;
    }
    char *ring_doc = slurp(argv[1]);
    char *bimod_doc = slurp(argv[2]);
    if (!ring_doc || !bimod_doc) return 2;

    CrextRing *ring = NULL;
    CrextBimodule *bimod = NULL;
    CrextStatus s = crext_ring_from_json(ring_doc, &ring);
    if (s != CREXT_STATUS_OK) return fail(s);
    s = crext_bimodule_from_json(ring, bimod_doc, &bimod);
    if (s != CREXT_STATUS_OK) return fail(s);

    uint64_t factors[16];
    size_t len = 16;
    s = crext_h3(bimod, CREXT_METHOD_SNF, factors, &len);
    if (s != CREXT_STATUS_OK) return fail(s);
    printf("H3:");
    for (size_t i = 0; i < len; i++) printf(" %llu", (unsigned long long)factors[i]);
    printf("\n");

    CrextCochain3 *zero = NULL;
    s = crext_cochain3_from_json(bimod, "{\"kind\":\"cochain3\",\"version\":1,\"entries\":[]}", &zero);
    if (s != CREXT_STATUS_OK) return fail(s);
    CrextModel *model = NULL;
    s = crext_realize(bimod, zero, &model);
    if (s != CREXT_STATUS_OK) return fail(s);
    size_t failures = 0;
    s = crext_model_check_coherence(model, &failures);
    if (s != CREXT_STATUS_OK) return fail(s);
    printf("coherence failures: %zu\n", failures);

    crext_model_free(model);
    crext_cochain3_free(zero);
    crext_bimodule_free(bimod);
    crext_ring_free(ring);
    free(ring_doc);
    free(bimod_doc);
    return 0;
}
