#include <stdio.h>
#include <string.h>

#include "sucfix.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    SucfixPermutation *sigma = NULL, *tau = NULL, *back = NULL;
    CHECK(sucfix_perm_parse("7 2 6 4 1 3 5", &sigma) == SUCFIX_STATUS_OK);
    CHECK(sucfix_phi(sigma, &tau) == SUCFIX_STATUS_OK);

    char *s = sucfix_perm_to_string(tau);
    CHECK(s != NULL && strcmp(s, "4 1 2 6 7 5 3") == 0);
    sucfix_string_free(s);

    size_t buf[8], len = 0;
    CHECK(sucfix_statistic(tau, SUCFIX_STATISTIC_PRED, buf, 8, &len) == SUCFIX_STATUS_OK);
    CHECK(len == 2 && buf[0] == 6 && buf[1] == 7);

    CHECK(sucfix_phi_inverse(tau, &back) == SUCFIX_STATUS_OK);
    CHECK(sucfix_perm_values(back, buf, 8) == SUCFIX_STATUS_OK);
    CHECK(buf[0] == 7 && buf[6] == 5);

    SucfixPermutation *bad = NULL;
    CHECK(sucfix_perm_parse("1 1", &bad) == SUCFIX_STATUS_PARSE_ERROR);
    CHECK(sucfix_last_error() != NULL);

    char *report = NULL;
    CHECK(sucfix_verify_json(5, SUCFIX_CHECK_TRIPLE, 1, &report) == SUCFIX_STATUS_OK);
    CHECK(strstr(report, "\"passed\":true") != NULL);
    sucfix_string_free(report);

    sucfix_perm_free(sigma);
    sucfix_perm_free(tau);
    sucfix_perm_free(back);
    printf("ok\n");
    return 0;
}
