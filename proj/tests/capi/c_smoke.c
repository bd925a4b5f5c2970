/* Compiles the public header as C and runs one session. */
#include <stdio.h>

#include "qot/qot.h"

int main(void) {
  qot_params params;
  qot_session* session = NULL;
  qot_text* text = NULL;
  int received = 0, aborted = 0, gamma = 0;

  qot_params_default(&params);
  if (qot_session_run(&params, QOT_ALICE_HONEST, QOT_BOB_HONEST, 1, &session) != QOT_OK) {
    fprintf(stderr, "run failed: %s\n", qot_last_error());
    return 1;
  }
  if (qot_session_outcome(session, &received, &aborted, &gamma) != QOT_OK) return 1;
  if (qot_session_summary(session, 0, &text) != QOT_OK) return 1;
  printf("%.*s\n", (int)qot_text_size(text), qot_text_data(text));
  qot_text_free(text);
  qot_session_free(session);
  return received == gamma ? 0 : 1;
}
