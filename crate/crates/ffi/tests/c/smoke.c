#include <stdio.h>
#include <string.h>

#include "catconvex.h"

int main(void) {
    const char *doc = "{\"x\":[\"x1\",\"x2\"],\"y\":[\"y1\"],"
                      "\"edges\":[[\"x1\",\"y1\"],[\"x2\",\"y1\"]],"
                      "\"lists\":{\"x1\":[1],\"x2\":[2],\"y1\":[1,2,3]}}";
    CcInstance *inst = NULL;
    if (cc_instance_parse(doc, &inst) != CC_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", cc_last_error());
        return 1;
    }
    char *out = NULL;
    CcStatus s = cc_color(inst, &out);
    if (s != CC_STATUS_OK || strstr(out, "\"y1\":3") == NULL) {
        fprintf(stderr, "color: %d %s\n", (int)s, out ? out : "");
        return 1;
    }
    cc_string_free(out);
    if (cc_recognize(NULL, &out) != CC_STATUS_NULL_POINTER || cc_last_error() == NULL) {
        return 1;
    }
    cc_instance_free(inst);
    printf("%s\n", cc_version());
    return 0;
}
