#include <stdio.h>
#include <string.h>

#include "frobsig.h"

static const char *CUSP =
    "field GF(2)\n"
    "ring x y\n"
    "mod y^2 + x^3\n"
    "ideal I0 = x\n"
    "task srel I0 e_max=2\n";

int main(void) {
    FrobsigInstance *inst = NULL;
    if (frobsig_instance_parse(CUSP, &inst) != FROBSIG_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", frobsig_last_error_message());
        return 1;
    }
    FrobsigRunOptions opts = frobsig_run_options_default();
    opts.format = FROBSIG_FORMAT_CSV;
    char *report = NULL;
    FrobsigStatus status = frobsig_run(inst, "cusp", &opts, &report);
    if (status != FROBSIG_STATUS_OK) {
        fprintf(stderr, "run: %d %s\n", (int)status, frobsig_last_error_message());
        return 1;
    }
    printf("%s", report);
    frobsig_string_free(report);

    opts.budget = 0;
    opts.task = "hk";
    opts.e_max = 3;
    status = frobsig_run(inst, NULL, &opts, &report);
    if (status != FROBSIG_STATUS_OK || strstr(report, "instance,hk,3,2,1,") == NULL) {
        fprintf(stderr, "hk: %d\n%s", (int)status, report ? report : "");
        return 1;
    }
    frobsig_string_free(report);
    frobsig_instance_free(inst);

    FrobsigInstance *bad = NULL;
    status = frobsig_instance_parse("field GF(4)\n", &bad);
    if (status != FROBSIG_STATUS_INVALID || bad != NULL || frobsig_last_error_message() == NULL) {
        return 1;
    }
    return 0;
}
