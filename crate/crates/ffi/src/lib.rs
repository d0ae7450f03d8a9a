//! C ABI for loopforge. Words are opaque handles; every call returns an
//! `LfStatus` and writes results through out-pointers. Strings handed out
//! by the library must be released with `lf_string_free`.

use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;
use loopforge::error::Error;
use loopforge::expansion::count_vectors_exact;
use loopforge::oracle::self_intersection_number;
use loopforge::word::{parse_word, reduce_word, GapAlphabet, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    BudgetExhausted = 5,
    Internal = 6,
}

/// Opaque word handle.
pub struct LfWord {
    word: Word,
}

fn status_of(e: &Error) -> LfStatus {
    match e {
        Error::UnknownToken(_)
        | Error::LabelOutOfRange { .. }
        | Error::MisplacedBasepoint
        | Error::OddLength(_)
        | Error::BasepointNotAllowed => LfStatus::Parse,
        Error::BudgetExhausted(_) => LfStatus::BudgetExhausted,
        Error::Io(_) => LfStatus::Internal,
        _ => LfStatus::Precondition,
    }
}

fn into_handle(word: Word) -> *mut LfWord {
    Box::into_raw(Box::new(LfWord { word }))
}

/// Static description of a status code. Never free the result.
#[no_mangle]
pub extern "C" fn lf_status_message(status: LfStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        LfStatus::Ok => b"ok\0",
        LfStatus::NullPointer => b"null pointer argument\0",
        LfStatus::InvalidUtf8 => b"string is not valid UTF-8\0",
        LfStatus::Parse => b"word could not be parsed\0",
        LfStatus::Precondition => b"precondition violated\0",
        LfStatus::BudgetExhausted => b"search budget exhausted\0",
        LfStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Parse a word such as `"v 2 1 0 2 v"` over `n` punctures.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_word_parse(text: *const c_char, n: u16, out: *mut *mut LfWord) -> LfStatus {
    if text.is_null() || out.is_null() {
        return LfStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return LfStatus::InvalidUtf8;
    };
    let parsed = GapAlphabet::with_basepoint(n).and_then(|a| {
        let w = parse_word(text, &a)?;
        a.validate(&w)?;
        Ok(w)
    });
    match parsed {
        Ok(w) => {
            *out = into_handle(w);
            LfStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// # Safety
/// `word` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lf_word_free(word: *mut LfWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Number of inner letters.
///
/// # Safety
/// `word` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lf_word_len(word: *const LfWord) -> usize {
    if word.is_null() {
        return 0;
    }
    (*word).word.len()
}

/// Text form of a word; release with `lf_string_free`.
///
/// # Safety
/// `word` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_word_to_string(word: *const LfWord, out: *mut *mut c_char) -> LfStatus {
    if word.is_null() || out.is_null() {
        return LfStatus::NullPointer;
    }
    match CString::new((*word).word.to_string()) {
        Ok(s) => {
            *out = s.into_raw();
            LfStatus::Ok
        }
        Err(_) => LfStatus::Internal,
    }
}

/// Reduced form of `word` as a new handle, plus the parity of the stripped
/// prefix (always 0 for x-words).
///
/// # Safety
/// `word` must be a live handle; `out` and `parity` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lf_word_reduce(word: *const LfWord, out: *mut *mut LfWord, parity: *mut u8) -> LfStatus {
    if word.is_null() || out.is_null() || parity.is_null() {
        return LfStatus::NullPointer;
    }
    let r = reduce_word(&(*word).word);
    *parity = r.stripped_prefix_parity;
    *out = into_handle(r.word);
    LfStatus::Ok
}

/// Minimal self-intersection number. On budget exhaustion `value` holds the
/// best upper bound found, `exact` is false and the status says so.
///
/// # Safety
/// `word` must be a live handle; `value` and `exact` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lf_self_intersection(
    word: *const LfWord,
    budget: u64,
    value: *mut u32,
    exact: *mut bool,
) -> LfStatus {
    if word.is_null() || value.is_null() || exact.is_null() {
        return LfStatus::NullPointer;
    }
    if budget == 0 {
        return LfStatus::Precondition;
    }
    let r = self_intersection_number(&(*word).word, budget);
    *value = r.value;
    *exact = r.exact;
    if r.exact {
        LfStatus::Ok
    } else {
        LfStatus::BudgetExhausted
    }
}

/// Number of expansion vectors of length `l` whose winding bound is below
/// `k`, as a decimal string; release with `lf_string_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_count_expansions(l: u64, k: u64, out: *mut *mut c_char) -> LfStatus {
    if out.is_null() {
        return LfStatus::NullPointer;
    }
    if k < 1 {
        return LfStatus::Precondition;
    }
    match CString::new(count_vectors_exact(l, k).to_string()) {
        Ok(s) => {
            *out = s.into_raw();
            LfStatus::Ok
        }
        Err(_) => LfStatus::Internal,
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
