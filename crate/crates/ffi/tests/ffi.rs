use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use syncrel_ffi::*;

const R2: &str = "input-alphabet: a b c\noutput-alphabet: d e\nregex: d a* b a* (d+e)* + e a* c a* (d+e)*\n";
const R1: &str = "input-alphabet: a b\noutput-alphabet: c\nregex: a c (a c + b)* + (a + b c)* b c\n";

fn last_error() -> String {
    unsafe { CStr::from_ptr(syncrel_last_error()) }.to_string_lossy().into_owned()
}

fn lang(text: &str) -> *mut SyncrelLanguage {
    let text = CString::new(text).unwrap();
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { syncrel_language_parse(text.as_ptr(), &mut l) }, SyncrelStatus::Ok, "{}", last_error());
    l
}

unsafe fn take(s: *mut std::ffi::c_char) -> Option<String> {
    if s.is_null() {
        return None;
    }
    let v = CStr::from_ptr(s).to_string_lossy().into_owned();
    syncrel_string_free(s);
    Some(v)
}

#[test]
fn classify_and_metrics() {
    let l = lang("input-alphabet: a\noutput-alphabet: b\nregex: (a b)* (a* + b*)\n");
    unsafe {
        let mut c = std::mem::MaybeUninit::<SyncrelClassification>::uninit();
        assert_eq!(syncrel_classify(l, c.as_mut_ptr()), SyncrelStatus::Ok);
        let c = c.assume_init();
        assert_eq!(c.sync_class, SyncrelClass::Fsl);
        assert!(c.shiftlag_finite && !c.shift_finite);

        let w = CString::new("aabaabbbbbbbaaab").unwrap();
        let mut m = SyncrelMetrics::default();
        assert_eq!(syncrel_word_metrics(l, w.as_ptr(), &mut m), SyncrelStatus::Ok);
        assert_eq!((m.lag, m.shift, m.shiftlag), (4, 5, 2));

        let mut yes = false;
        let w = CString::new("abab").unwrap();
        assert_eq!(syncrel_language_accepts(l, w.as_ptr(), &mut yes), SyncrelStatus::Ok);
        assert!(yes);
        let w = CString::new("ba").unwrap();
        syncrel_language_accepts(l, w.as_ptr(), &mut yes);
        assert!(!yes);
        syncrel_language_free(l);
    }
}

#[test]
fn errors_and_null_arguments() {
    unsafe {
        let bad = CString::new("input-alphabet: a\noutput-alphabet: b\nregex: a z\n").unwrap();
        let mut l = ptr::null_mut();
        assert_eq!(syncrel_language_parse(bad.as_ptr(), &mut l), SyncrelStatus::Parse);
        assert!(l.is_null());
        assert!(last_error().contains("`z`"));

        assert_eq!(syncrel_language_parse(ptr::null(), &mut l), SyncrelStatus::NullArgument);
        let ok = CString::new(R2).unwrap();
        assert_eq!(syncrel_language_parse(ok.as_ptr(), ptr::null_mut()), SyncrelStatus::NullArgument);
        let mut c = std::mem::MaybeUninit::<SyncrelClassification>::uninit();
        assert_eq!(syncrel_classify(ptr::null(), c.as_mut_ptr()), SyncrelStatus::NullArgument);

        let path = CString::new("/nonexistent/x.syna").unwrap();
        assert_eq!(syncrel_language_load(path.as_ptr(), &mut l), SyncrelStatus::Io);

        // a success clears the message
        let r2 = lang(R2);
        assert_eq!(last_error(), "");
        let other = lang("input-alphabet: a\noutput-alphabet: b\nregex: a b\n");
        let mut a = SyncrelAnswer::Unknown;
        assert_eq!(syncrel_decide_definability(r2, other, &mut a, ptr::null_mut()), SyncrelStatus::Precondition);
        syncrel_language_free(r2);
        syncrel_language_free(other);
        syncrel_language_free(ptr::null_mut());
        syncrel_string_free(ptr::null_mut());
    }
}

#[test]
fn definability_with_witness() {
    let t = lang("input-alphabet: a\noutput-alphabet: b\nregex: a*b* + (ab)*(a a^+ + b b^+)\n");
    unsafe {
        let mut a = SyncrelAnswer::Unknown;
        let mut w = ptr::null_mut();
        assert_eq!(syncrel_decide_definability(t, t, &mut a, &mut w), SyncrelStatus::Ok);
        assert_eq!(a, SyncrelAnswer::Yes);
        assert!(!w.is_null());
        let mut text = ptr::null_mut();
        assert_eq!(syncrel_language_to_text(w, &mut text), SyncrelStatus::Ok);
        let text = take(text).unwrap();
        assert!(text.contains("input-alphabet: a"));
        // the written form parses back
        syncrel_language_free(lang(&text));
        syncrel_language_free(w);

        let mut amb = true;
        assert_eq!(syncrel_is_unambiguous(t, &mut amb), SyncrelStatus::Ok);
        assert!(!amb);
        syncrel_language_free(t);
    }
    let t = lang("input-alphabet: a\noutput-alphabet: b\nregex: (a b)* (a* + b*)\n");
    let mut un = false;
    unsafe {
        syncrel_is_unambiguous(t, &mut un);
        syncrel_language_free(t);
    }
    assert!(un);
}

#[test]
fn uniformization() {
    unsafe {
        let r1 = lang(R1);
        let mut a = SyncrelAnswer::Unknown;
        let mut d = 7;
        let mut f = ptr::null_mut();
        assert_eq!(syncrel_recognizable_uniformization(r1, &mut a, &mut d, &mut f), SyncrelStatus::Ok);
        assert_eq!((a, d), (SyncrelAnswer::No, 0));
        assert!(f.is_null());
        syncrel_language_free(r1);

        let r2 = lang(R2);
        assert_eq!(syncrel_recognizable_uniformization(r2, &mut a, &mut d, &mut f), SyncrelStatus::Ok);
        assert_eq!((a, d), (SyncrelAnswer::Yes, 1));
        let mut ok = false;
        assert_eq!(syncrel_verify_uniformizer(f, r2, &mut ok), SyncrelStatus::Ok);
        assert!(ok);
        let mut out = ptr::null_mut();
        let w = CString::new("aabaa").unwrap();
        assert_eq!(syncrel_transducer_eval(f, w.as_ptr(), &mut out), SyncrelStatus::Ok);
        assert_eq!(take(out).as_deref(), Some("d"));
        let w = CString::new("aa").unwrap();
        syncrel_transducer_eval(f, w.as_ptr(), &mut out);
        assert!(out.is_null());

        let mut text = ptr::null_mut();
        syncrel_transducer_to_text(f, &mut text);
        let text = CString::new(take(text).unwrap()).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(syncrel_transducer_parse(text.as_ptr(), &mut g), SyncrelStatus::Ok, "{}", last_error());
        syncrel_verify_uniformizer(g, r2, &mut ok);
        assert!(ok);
        syncrel_transducer_free(g);
        syncrel_transducer_free(f);
        syncrel_language_free(r2);
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(syncrel_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// The generated header compiles as C and as C++.
#[test]
fn header_compiles() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "include"].iter().collect();
    let src = "#include \"syncrel.h\"\n\
        int main(void) { SyncrelLanguage *l = 0; SyncrelClassification c;\n\
        if (syncrel_language_parse(\"\", &l) != SYNCREL_STATUS_OK) return 1;\n\
        syncrel_classify(l, &c); syncrel_language_free(l); return c.sync_class == SYNCREL_CLASS_FS; }\n";
    let tmp = tempfile::tempdir().unwrap();
    for (compiler, file) in [("cc", "t.c"), ("c++", "t.cpp")] {
        let path = tmp.path().join(file);
        std::fs::write(&path, src).unwrap();
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
            .arg(&dir)
            .arg(&path)
            .status()
            .unwrap_or_else(|e| panic!("running {compiler}: {e}"));
        assert!(status.success(), "{compiler} rejected the header");
    }
}
