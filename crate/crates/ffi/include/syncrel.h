#ifndef SYNCREL_H
#define SYNCREL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status of a call. Zero is success.
typedef enum SyncrelStatus {
  SYNCREL_STATUS_OK = 0,
  SYNCREL_STATUS_NULL_ARGUMENT = 1,
  SYNCREL_STATUS_INVALID_UTF8 = 2,
  SYNCREL_STATUS_PARSE = 3,
  SYNCREL_STATUS_IO = 4,
  // The input violates a precondition of the operation.
  SYNCREL_STATUS_PRECONDITION = 5,
  SYNCREL_STATUS_UNSUPPORTED = 6,
  SYNCREL_STATUS_BOUND_EXCEEDED = 7,
  // A self-check failed inside the library.
  SYNCREL_STATUS_INTERNAL = 8,
  SYNCREL_STATUS_PANIC = 9,
} SyncrelStatus;

typedef enum SyncrelClass {
  SYNCREL_CLASS_FS = 0,
  SYNCREL_CLASS_FSL = 1,
  SYNCREL_CLASS_ALL = 2,
} SyncrelClass;

typedef enum SyncrelAnswer {
  SYNCREL_ANSWER_NO = 0,
  SYNCREL_ANSWER_YES = 1,
  SYNCREL_ANSWER_UNKNOWN = 2,
} SyncrelAnswer;

// A regular language over a tagged input/output alphabet.
typedef struct SyncrelLanguage SyncrelLanguage;

// A subsequential transducer.
typedef struct SyncrelTransducer SyncrelTransducer;

typedef struct SyncrelClassification {
  bool lag_finite;
  bool shift_finite;
  bool shiftlag_finite;
  enum SyncrelClass sync_class;
  // States of the minimal DFA.
  size_t states;
} SyncrelClassification;

typedef struct SyncrelMetrics {
  size_t lag;
  size_t shift;
  size_t shiftlag;
} SyncrelMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *syncrel_last_error(void);

// Library version as a static string.
const char *syncrel_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void syncrel_string_free(char *s);

// Parses an automaton description (the `.syna` format).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum SyncrelStatus syncrel_language_parse(const char *text, struct SyncrelLanguage **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum SyncrelStatus syncrel_language_load(const char *path, struct SyncrelLanguage **out);

// # Safety
// `lang` must be null or a handle from this library, not yet freed.
void syncrel_language_free(struct SyncrelLanguage *lang);

// Writes the minimal DFA of the language in the `.syna` format.
//
// # Safety
// `lang` must be a live handle; `out` must be writable.
enum SyncrelStatus syncrel_language_to_text(const struct SyncrelLanguage *lang, char **out);

// Is the word, given in the language's symbols, in the language?
//
// # Safety
// `lang` must be a live handle; `word` a NUL-terminated string.
enum SyncrelStatus syncrel_language_accepts(const struct SyncrelLanguage *lang,
                                            const char *word,
                                            bool *out);

// # Safety
// `lang` must be a live handle; `out` must be writable.
enum SyncrelStatus syncrel_classify(const struct SyncrelLanguage *lang,
                                    struct SyncrelClassification *out);

// Lag, shift and shiftlag of a word over the language's alphabet.
//
// # Safety
// `lang` must be a live handle; `word` a NUL-terminated string.
enum SyncrelStatus syncrel_word_metrics(const struct SyncrelLanguage *lang,
                                        const char *word,
                                        struct SyncrelMetrics *out);

// Is ⟦S⟧ defined by a regular subset of T? On `yes`, `witness` (if not
// null) receives the subset; otherwise it is set to null.
//
// # Safety
// `s` and `t` must be live handles; `answer_out` must be writable;
// `witness` may be null.
enum SyncrelStatus syncrel_decide_definability(const struct SyncrelLanguage *s,
                                               const struct SyncrelLanguage *t,
                                               enum SyncrelAnswer *answer_out,
                                               struct SyncrelLanguage **witness);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum SyncrelStatus syncrel_is_unambiguous(const struct SyncrelLanguage *t, bool *out);

// Uniformization of ⟦S⟧ by a recognizable relation. On `yes`, `bound`
// receives D(B) and `uniformizer` (if not null) a subsequential
// uniformizer; on `no` they are left at 0 and null.
//
// # Safety
// `s` must be a live handle; `answer_out` and `bound` must be writable;
// `uniformizer` may be null.
enum SyncrelStatus syncrel_recognizable_uniformization(const struct SyncrelLanguage *s,
                                                       enum SyncrelAnswer *answer_out,
                                                       uint64_t *bound,
                                                       struct SyncrelTransducer **uniformizer);

// Parses a subsequential transducer (the `.synt` format).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum SyncrelStatus syncrel_transducer_parse(const char *text, struct SyncrelTransducer **out);

// # Safety
// `f` must be null or a handle from this library, not yet freed.
void syncrel_transducer_free(struct SyncrelTransducer *f);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum SyncrelStatus syncrel_transducer_to_text(const struct SyncrelTransducer *f, char **out);

// Output on an input word. `out` receives null when the input is outside
// the domain, else the space-separated output symbols.
//
// # Safety
// `f` must be a live handle; `word` a NUL-terminated string; `out` writable.
enum SyncrelStatus syncrel_transducer_eval(const struct SyncrelTransducer *f,
                                           const char *word,
                                           char **out);

// dom(f) = dom⟦S⟧ and graph(f) ⊆ ⟦S⟧.
//
// # Safety
// `f` and `s` must be live handles; `out` must be writable.
enum SyncrelStatus syncrel_verify_uniformizer(const struct SyncrelTransducer *f,
                                              const struct SyncrelLanguage *s,
                                              bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYNCREL_H */
