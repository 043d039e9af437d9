#include <stdio.h>
#include <string.h>
#include "eostrata.h"

int main(void) {
    EostrataSpec *spec = NULL;
    EostrataStatus st = eostrata_spec_parse("family=GL\nrank=3\nmu=1,0,0\n", &spec);
    if (st != EOSTRATA_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", eostrata_last_error());
        return 1;
    }
    char *out = NULL;
    st = eostrata_render(spec, EOSTRATA_COMMAND_BGMU, EOSTRATA_FORMAT_DOT, &out);
    if (st != EOSTRATA_STATUS_OK || strstr(out, "digraph") == NULL) {
        return 2;
    }
    printf("%s", out);
    eostrata_string_free(out);

    st = eostrata_render(spec, EOSTRATA_COMMAND_DESCRIBE, EOSTRATA_FORMAT_DOT, &out);
    if (st != EOSTRATA_STATUS_UNSUPPORTED || out != NULL || eostrata_last_error() == NULL) {
        return 3;
    }
    eostrata_spec_free(spec);

    st = eostrata_spec_parse("family=GL\nrank=x\n", &spec);
    if (st != EOSTRATA_STATUS_PARSE || spec != NULL) {
        return 4;
    }
    return 0;
}
