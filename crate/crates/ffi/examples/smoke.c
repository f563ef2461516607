#include <stdio.h>
#include "linepack.h"

int main(void) {
    const char *z7 = "{\"degree\":7,\"generators\":[[1,2,3,4,5,6,0]]}";
    LpGroup *group = NULL;
    LpScheme *scheme = NULL;
    LpDecomposition *dec = NULL;
    LpGram *gram = NULL;
    LpReport report;
    size_t subset[3] = {0, 0, 0};
    size_t a, b, c;
    int found = 0;

    if (lp_group_from_json(z7, &group) != LP_STATUS_OK ||
        lp_scheme_new(group, LP_ACTION_NATURAL, 0, &scheme) != LP_STATUS_OK ||
        lp_decompose(scheme, 0, 1e-8, &dec) != LP_STATUS_OK) {
        fprintf(stderr, "linepack: %s\n", lp_last_error_message());
        return 1;
    }
    for (a = 0; a < 7; a++)
        for (b = a + 1; b < 7; b++)
            for (c = b + 1; c < 7; c++) {
                subset[0] = a;
                subset[1] = b;
                subset[2] = c;
                lp_gram_from_subset(dec, subset, 3, &gram);
                lp_gram_report(gram, 1e-8, &report);
                if (report.is_etf) {
                    found++;
                }
                lp_gram_free(gram);
            }
    printf("linepack %s: %d subsets give a 3x7 ETF\n", lp_version(), found);
    lp_decomposition_free(dec);
    lp_scheme_free(scheme);
    lp_group_free(group);
    return found > 0 ? 0 : 1;
}
