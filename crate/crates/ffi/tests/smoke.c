#include <stdio.h>
#include "kleincurve.h"

int main(void) {
    const double u[18] = {1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0};
    KcTransform *t = NULL;
    if (kc_transform_new(u, &t) != KC_STATUS_OK) {
        fprintf(stderr, "%s\n", kc_last_error_message());
        return 1;
    }
    KcElementKind kind;
    double limit[18];
    uint32_t rank = 0;
    if (kc_classify_element(t, 1e-9, &kind) != KC_STATUS_OK || kc_power_limit(t, 1e-9, limit, &rank) != KC_STATUS_OK) {
        fprintf(stderr, "%s\n", kc_last_error_message());
        kc_transform_free(t);
        return 1;
    }
    printf("%s rank=%u limit[0][2]=%g\n", kind == KC_ELEMENT_KIND_PARABOLIC ? "parabolic" : "other", rank, limit[4]);
    kc_transform_free(t);
    return 0;
}
