//! C ABI over the syncrel library.
//!
//! Objects are opaque handles created by `*_parse` / `*_load` and released
//! with the matching `*_free`. Every fallible call returns a `SyncrelStatus`;
//! on failure `syncrel_last_error` gives the message for the calling thread.
//! Strings returned through `char **` are owned by the caller and released
//! with `syncrel_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use syncrel::automata::{Nfa, PlainAlphabet};
use syncrel::cli::model::{self, Kind, Model};
use syncrel::definability::{self, Answer};
use syncrel::syncword::{self, SyncClass, TaggedAlphabet};
use syncrel::uniform::{self, SubseqTransducer};
use syncrel::Error;

/// Status of a call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyncrelStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    /// The input violates a precondition of the operation.
    Precondition = 5,
    Unsupported = 6,
    BoundExceeded = 7,
    /// A self-check failed inside the library.
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyncrelAnswer {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyncrelClass {
    Fs = 0,
    Fsl = 1,
    All = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SyncrelClassification {
    pub lag_finite: bool,
    pub shift_finite: bool,
    pub shiftlag_finite: bool,
    pub sync_class: SyncrelClass,
    /// States of the minimal DFA.
    pub states: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct SyncrelMetrics {
    pub lag: usize,
    pub shift: usize,
    pub shiftlag: usize,
}

/// A regular language over a tagged input/output alphabet.
pub struct SyncrelLanguage {
    alpha: TaggedAlphabet,
    nfa: Nfa,
}

/// A subsequential transducer.
pub struct SyncrelTransducer {
    f: SubseqTransducer,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SyncrelStatus {
    match e {
        Error::Parse { .. } | Error::Syntax { .. } | Error::UndeclaredLetter(_) => SyncrelStatus::Parse,
        Error::Io(_) => SyncrelStatus::Io,
        Error::Unsupported(_) => SyncrelStatus::Unsupported,
        Error::BoundExceeded(_) => SyncrelStatus::BoundExceeded,
        Error::Internal(_) | Error::Diverged => SyncrelStatus::Internal,
        _ => SyncrelStatus::Precondition,
    }
}

enum Fail {
    Status(SyncrelStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, recording the error message and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SyncrelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SyncrelStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside syncrel");
            SyncrelStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(SyncrelStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(SyncrelStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    put_with(out, || v)
}

/// Checks `out` before building the value, so nothing is allocated for a
/// null destination.
unsafe fn put_with<T>(out: *mut T, v: impl FnOnce() -> T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v());
    Ok(())
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn answer(a: Answer) -> SyncrelAnswer {
    match a {
        Answer::Yes => SyncrelAnswer::Yes,
        Answer::No => SyncrelAnswer::No,
        Answer::Unknown => SyncrelAnswer::Unknown,
    }
}

fn language_of(m: Model) -> Result<SyncrelLanguage, Fail> {
    match m {
        Model::Automaton(a) | Model::Relation(a, _) => Ok(SyncrelLanguage { alpha: a.alpha, nfa: a.nfa }),
        _ => Err(Fail::Status(SyncrelStatus::Precondition, "model is not an automaton".into())),
    }
}

fn transducer_of(m: Model) -> Result<SyncrelTransducer, Fail> {
    match m {
        Model::Transducer(t) => match t.subseq {
            Some(f) => Ok(SyncrelTransducer { f }),
            None => Err(Fail::Status(SyncrelStatus::Unsupported, "transducer is not subsequential".into())),
        },
        _ => Err(Fail::Status(SyncrelStatus::Precondition, "model is not a transducer".into())),
    }
}

fn same_alphabet(a: &SyncrelLanguage, b: &SyncrelLanguage) -> Result<(), Fail> {
    if a.alpha != b.alpha {
        return Err(Error::AlphabetMismatch("operands use different alphabets".into()).into());
    }
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn syncrel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn syncrel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn syncrel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an automaton description (the `.syna` format).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_language_parse(text: *const c_char, out: *mut *mut SyncrelLanguage) -> SyncrelStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let l = language_of(model::parse_model(text, "<text>", Kind::Automaton)?)?;
        put_with(out, || Box::into_raw(Box::new(l)))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_language_load(path: *const c_char, out: *mut *mut SyncrelLanguage) -> SyncrelStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let l = language_of(model::load_model(Path::new(path))?)?;
        put_with(out, || Box::into_raw(Box::new(l)))
    })
}

/// # Safety
/// `lang` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syncrel_language_free(lang: *mut SyncrelLanguage) {
    if !lang.is_null() {
        drop(Box::from_raw(lang));
    }
}

/// Writes the minimal DFA of the language in the `.syna` format.
///
/// # Safety
/// `lang` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_language_to_text(lang: *const SyncrelLanguage, out: *mut *mut c_char) -> SyncrelStatus {
    guard(|| {
        let l = obj(lang, "lang")?;
        put_with(out, || new_string(model::write_automaton(&l.alpha, &l.nfa)))
    })
}

/// Is the word, given in the language's symbols, in the language?
///
/// # Safety
/// `lang` must be a live handle; `word` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn syncrel_language_accepts(
    lang: *const SyncrelLanguage,
    word: *const c_char,
    out: *mut bool,
) -> SyncrelStatus {
    guard(|| {
        let l = obj(lang, "lang")?;
        let w = l.alpha.word(str_arg(word, "word")?)?;
        put(out, l.nfa.accepts(&w))
    })
}

/// # Safety
/// `lang` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_classify(
    lang: *const SyncrelLanguage,
    out: *mut SyncrelClassification,
) -> SyncrelStatus {
    guard(|| {
        let l = obj(lang, "lang")?;
        let c = syncword::classify(&l.alpha, &l.nfa)?;
        let class = match c.class {
            SyncClass::FS => SyncrelClass::Fs,
            SyncClass::FSL => SyncrelClass::Fsl,
            SyncClass::ALL => SyncrelClass::All,
        };
        put(
            out,
            SyncrelClassification {
                lag_finite: c.lag_finite,
                shift_finite: c.shift_finite,
                shiftlag_finite: c.shiftlag_finite,
                sync_class: class,
                states: c.dfa.num_states(),
            },
        )
    })
}

/// Lag, shift and shiftlag of a word over the language's alphabet.
///
/// # Safety
/// `lang` must be a live handle; `word` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn syncrel_word_metrics(
    lang: *const SyncrelLanguage,
    word: *const c_char,
    out: *mut SyncrelMetrics,
) -> SyncrelStatus {
    guard(|| {
        let l = obj(lang, "lang")?;
        let w = l.alpha.word(str_arg(word, "word")?)?;
        let m = syncword::word_metrics(&l.alpha, &w);
        put(out, SyncrelMetrics { lag: m.lag, shift: m.shift, shiftlag: m.shiftlag })
    })
}

/// Is ⟦S⟧ defined by a regular subset of T? On `yes`, `witness` (if not
/// null) receives the subset; otherwise it is set to null.
///
/// # Safety
/// `s` and `t` must be live handles; `answer_out` must be writable;
/// `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn syncrel_decide_definability(
    s: *const SyncrelLanguage,
    t: *const SyncrelLanguage,
    answer_out: *mut SyncrelAnswer,
    witness: *mut *mut SyncrelLanguage,
) -> SyncrelStatus {
    guard(|| {
        let (s, t) = (obj(s, "s")?, obj(t, "t")?);
        same_alphabet(s, t)?;
        if answer_out.is_null() {
            return Err(null("output pointer"));
        }
        let v = definability::decide_definability(&s.alpha, &s.nfa, &t.nfa)?;
        if !witness.is_null() {
            let w = v.witness.map(|nfa| Box::into_raw(Box::new(SyncrelLanguage { alpha: s.alpha.clone(), nfa })));
            witness.write(w.unwrap_or(ptr::null_mut()));
        }
        put(answer_out, answer(v.answer))
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_is_unambiguous(t: *const SyncrelLanguage, out: *mut bool) -> SyncrelStatus {
    guard(|| {
        let t = obj(t, "t")?;
        put(out, definability::is_unambiguous(&t.alpha, &t.nfa)?)
    })
}

/// Uniformization of ⟦S⟧ by a recognizable relation. On `yes`, `bound`
/// receives D(B) and `uniformizer` (if not null) a subsequential
/// uniformizer; on `no` they are left at 0 and null.
///
/// # Safety
/// `s` must be a live handle; `answer_out` and `bound` must be writable;
/// `uniformizer` may be null.
#[no_mangle]
pub unsafe extern "C" fn syncrel_recognizable_uniformization(
    s: *const SyncrelLanguage,
    answer_out: *mut SyncrelAnswer,
    bound: *mut u64,
    uniformizer: *mut *mut SyncrelTransducer,
) -> SyncrelStatus {
    guard(|| {
        let s = obj(s, "s")?;
        if answer_out.is_null() || bound.is_null() {
            return Err(null("output pointer"));
        }
        if !uniformizer.is_null() {
            uniformizer.write(ptr::null_mut());
        }
        let b = uniform::build_distance_automaton(&s.alpha, &s.nfa)?;
        if !uniform::is_limited(&b) {
            bound.write(0);
            return put(answer_out, SyncrelAnswer::No);
        }
        bound.write(uniform::bounded_distance_value(&b)?);
        if !uniformizer.is_null() {
            let d = uniform::synthesize_recognizable_uniformizer(&s.alpha, &s.nfa)?;
            let f = uniform::uniformizer_to_subseq(&s.alpha, &d)?;
            uniformizer.write(Box::into_raw(Box::new(SyncrelTransducer { f })));
        }
        put(answer_out, SyncrelAnswer::Yes)
    })
}

/// Parses a subsequential transducer (the `.synt` format).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_transducer_parse(
    text: *const c_char,
    out: *mut *mut SyncrelTransducer,
) -> SyncrelStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let t = transducer_of(model::parse_model(text, "<text>", Kind::Transducer)?)?;
        put_with(out, || Box::into_raw(Box::new(t)))
    })
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syncrel_transducer_free(f: *mut SyncrelTransducer) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_transducer_to_text(f: *const SyncrelTransducer, out: *mut *mut c_char) -> SyncrelStatus {
    guard(|| {
        let f = obj(f, "f")?;
        put_with(out, || new_string(model::write_transducer(&f.f)))
    })
}

/// Output on an input word. `out` receives null when the input is outside
/// the domain, else the space-separated output symbols.
///
/// # Safety
/// `f` must be a live handle; `word` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_transducer_eval(
    f: *const SyncrelTransducer,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SyncrelStatus {
    guard(|| {
        let f = &obj(f, "f")?.f;
        let ins = PlainAlphabet::new(f.alpha.inputs());
        let outs = PlainAlphabet::new(f.alpha.outputs());
        let u = ins.word(str_arg(word, "word")?)?;
        let v = uniform::eval_subseq(f, &u);
        put_with(out, || v.map_or(ptr::null_mut(), |v| new_string(outs.show(&v))))
    })
}

/// dom(f) = dom⟦S⟧ and graph(f) ⊆ ⟦S⟧.
///
/// # Safety
/// `f` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syncrel_verify_uniformizer(
    f: *const SyncrelTransducer,
    s: *const SyncrelLanguage,
    out: *mut bool,
) -> SyncrelStatus {
    guard(|| {
        let (f, s) = (&obj(f, "f")?.f, obj(s, "s")?);
        if f.alpha != s.alpha {
            return Err(Error::AlphabetMismatch("transducer and language use different alphabets".into()).into());
        }
        put(out, uniform::verify_uniformizer(f, &s.nfa)?)
    })
}
