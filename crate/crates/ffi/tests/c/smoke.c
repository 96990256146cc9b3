#include <stdio.h>
#include <string.h>

#include "plumbing.h"

#define CHECK(expr)                                                           \
  do {                                                                        \
    if (!(expr)) {                                                            \
      fprintf(stderr, "%s:%d: %s failed: %s\n", __FILE__, __LINE__, #expr,   \
              plumbing_last_error());                                         \
      return 1;                                                               \
    }                                                                         \
  } while (0)

static const char *SPEC =
    "{\"q1\": {\"vertices\": [0, 1, 2], \"simplices\": [[0, 1], [1, 2], [0, 2]]},"
    " \"q2\": {\"vertices\": [0, 1, 2], \"simplices\": [[0, 1], [1, 2], [0, 2]]},"
    " \"delta1\": [0, 1], \"delta2\": [0, 1]}";

int main(void) {
  PlumbingDg *dg = NULL;
  PlumbingReport *report = NULL;
  size_t n = 0, rank = 0, failures = 1;
  int sign = -1;
  char *json = NULL;

  CHECK(plumbing_dg_from_json(SPEC, NULL, &dg) == PLUMBING_STATUS_OK);
  CHECK(plumbing_dg_object_count(dg, &n) == PLUMBING_STATUS_OK && n == 2);
  CHECK(plumbing_dg_hom_rank(dg, 1, 0, 1, &rank) == PLUMBING_STATUS_OK && rank == 1);

  CHECK(plumbing_dg_verify(dg, &report) == PLUMBING_STATUS_OK);
  CHECK(plumbing_report_failures(report, &failures) == PLUMBING_STATUS_OK && failures == 0);
  CHECK(plumbing_report_to_json(report, &json) == PLUMBING_STATUS_OK);
  CHECK(strstr(json, "\"check\"") != NULL);
  plumbing_string_free(json);
  plumbing_report_free(report);
  plumbing_dg_free(dg);

  CHECK(plumbing_dg_from_json("{", NULL, &dg) == PLUMBING_STATUS_PARSE_ERROR);
  CHECK(strlen(plumbing_last_error()) > 0);
  CHECK(plumbing_stasheff_sign(3, 2, 1, &sign) == PLUMBING_STATUS_OK && sign == 1);

  printf("ok\n");
  return 0;
}
