#ifndef ILT_H
#define ILT_H

/*
 * C API of the transfer-error diagnosis engine. A lexicon is loaded once
 * and queried per sentence; every query returns an owned result handle.
 * All returned strings live as long as the handle they came from.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ilt_status {
  ILT_OK = 0,                /* accepted by the target grammar */
  ILT_DIAGNOSED = 1,         /* parsed only with transferred frames */
  ILT_NO_ANALYSIS = 2,       /* no parse, strict or repaired */
  ILT_UNKNOWN_WORD = 3,      /* a token neither grammar knows */
  ILT_EDGE_CAP_EXCEEDED = 4, /* chart grew past the configured cap */
  ILT_NO_PARSE = 5,          /* strict-only or stage parse failed */
  ILT_LEXICON_ERROR = 6,
  ILT_IO_ERROR = 7,
  ILT_USAGE_ERROR = 8
} ilt_status;

const char* ilt_status_name(ilt_status status);

const char* ilt_version(void);

typedef struct ilt_lexicon ilt_lexicon;
typedef struct ilt_result ilt_result;

typedef struct ilt_config {
  int max_repairs;   /* transferred frames one parse may use; default 2 */
  int beam;          /* analyses kept after ranking; default 16 */
  int edge_cap;      /* chart size bound; default 10000 */
  const char* stage; /* NULL, or "transfer" / "distinct" / "variable":
                        parse with the learner grammar of that stage,
                        no repairs */
  int strict_only;   /* nonzero: target grammar only, no repairs */
} ilt_config;

/* Fills in the defaults above. */
void ilt_config_init(ilt_config* config);

/*
 * Loaders return NULL on failure and, given a buffer, a one-line message
 * that starts with a stable error code word such as DANGLING_PFORM.
 */
ilt_lexicon* ilt_lexicon_load(const char* path, char* errbuf, size_t errbuf_len);
ilt_lexicon* ilt_lexicon_load_string(const char* text, char* errbuf, size_t errbuf_len);
void ilt_lexicon_free(ilt_lexicon* lexicon);

const char* ilt_lexicon_lt_language(const ilt_lexicon* lexicon);
const char* ilt_lexicon_l1_language(const ilt_lexicon* lexicon);
int ilt_lexicon_entry_count(const ilt_lexicon* lexicon);
int ilt_lexicon_transfer_frame_count(const ilt_lexicon* lexicon);
int ilt_lexicon_warning_count(const ilt_lexicon* lexicon);
const char* ilt_lexicon_warning(const ilt_lexicon* lexicon, int index);

/*
 * Parses and, unless configured otherwise, repairs one sentence. config
 * may be NULL for defaults. Returns NULL only on bad arguments, with a
 * message in errbuf.
 */
ilt_result* ilt_diagnose(const ilt_lexicon* lexicon, const char* sentence,
                         const ilt_config* config, char* errbuf, size_t errbuf_len);
void ilt_result_free(ilt_result* result);

ilt_status ilt_result_status(const ilt_result* result);
/* Best reading; empty strings when there is none. */
const char* ilt_result_semantics(const ilt_result* result);
const char* ilt_result_tree(const ilt_result* result);
/* Unknown-word position, or -1. */
int ilt_result_unknown_index(const ilt_result* result);
const char* ilt_result_unknown_token(const ilt_result* result);

/* Human-readable block. */
const char* ilt_result_text(const ilt_result* result);
/* Machine lines: one JSON object per line, fixed key set. None are
 * produced in stage or strict-only mode. */
int ilt_result_line_count(const ilt_result* result);
const char* ilt_result_line(const ilt_result* result, int index);

typedef struct ilt_diagnosis_view {
  const char* il_lemma;
  const char* l1_lemma;
  const char* observed_frame;
  const char* l1_frame;
  const char* lt_frames; /* joined with " | " */
  const char* classification;
  const char* paraphrase; /* "" when none applies */
  int rank;
  int cost;
  int span_start;
  int span_end;
} ilt_diagnosis_view;

int ilt_result_diagnosis_count(const ilt_result* result);
/* 0 on success, -1 on a bad index. Strings live with the result. */
int ilt_result_diagnosis(const ilt_result* result, int index, ilt_diagnosis_view* out);

#ifdef __cplusplus
}
#endif

#endif /* ILT_H */
