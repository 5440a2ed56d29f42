//! C interface to the workbench.
//!
//! Categories and simplicial sets cross the boundary as opaque handles;
//! everything else as NUL-terminated UTF-8 JSON. Every function returns a
//! [`WbStatus`]; on failure [`wb_last_error`] describes what went wrong.
//! Strings handed out must be released with [`wb_string_free`], handles with
//! their own `_free` function. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use workbench::dwyer::find_dwyer_witness;
use workbench::fincat::{FinCat, RawFunctor};
use workbench::harness::{run_suite, Corpus};
use workbench::simplicial::{categorify, homology, nerve, subdivide, FinSSet};
use workbench::Error;

/// Outcome of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Malformed = 3,
    SizeLimit = 4,
    Invalid = 5,
    UnknownSuite = 6,
    Panic = 7,
}

/// A validated finite category.
pub struct WbCategory(Arc<FinCat>);

/// A validated finite simplicial set.
pub struct WbSSet(FinSSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("NULs were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(WbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Malformed(_) | Error::UnknownName(_) => WbStatus::Malformed,
            Error::SizeLimitExceeded { .. } | Error::ClosureBudgetExceeded(_) => WbStatus::SizeLimit,
            Error::UnknownSuite(_) => WbStatus::UnknownSuite,
            _ => WbStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `body`, recording any failure or panic as the last error.
fn guard(body: impl FnOnce() -> Outcome) -> WbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            WbStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WbStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(WbStatus::NullArgument, "a required pointer argument is null".into())
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|e| Failure(WbStatus::InvalidUtf8, e.to_string()))
}

/// # Safety
/// `p` is null or a live handle of type `T`.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(null)
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    unsafe { out.write(value) };
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no NUL bytes").into_raw()
}

fn category_from(json: &str) -> Result<Arc<FinCat>, Failure> {
    Ok(Arc::new(FinCat::from_json(json)?))
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses and validates a category.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_category_from_json(json: *const c_char, out: *mut *mut WbCategory) -> WbStatus {
    guard(|| {
        let c = category_from(unsafe { text(json) }?)?;
        unsafe { put(out, Box::into_raw(Box::new(WbCategory(c)))) }
    })
}

/// # Safety
/// `c` is null or a live category handle.
#[no_mangle]
pub unsafe extern "C" fn wb_category_free(c: *mut WbCategory) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// # Safety
/// `c` is a live handle; the out pointers are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wb_category_counts(
    c: *const WbCategory,
    objects: *mut usize,
    morphisms: *mut usize,
) -> WbStatus {
    guard(|| {
        let c = unsafe { handle(c) }?;
        unsafe { put(objects, c.0.object_count()) }?;
        unsafe { put(morphisms, c.0.morphism_count()) }
    })
}

/// # Safety
/// `c` is a live handle; the out pointers are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wb_category_classify(
    c: *const WbCategory,
    is_poset: *mut bool,
    is_acyclic: *mut bool,
) -> WbStatus {
    guard(|| {
        let class = unsafe { handle(c) }?.0.classify();
        unsafe { put(is_poset, class.is_poset) }?;
        unsafe { put(is_acyclic, class.is_acyclic) }
    })
}

/// Canonical JSON; release with [`wb_string_free`].
///
/// # Safety
/// `c` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_category_to_json(c: *const WbCategory, out: *mut *mut c_char) -> WbStatus {
    guard(|| {
        let json = unsafe { handle(c) }?.0.to_json();
        unsafe { put(out, owned_string(json)) }
    })
}

/// The nerve truncated at `trunc`.
///
/// # Safety
/// `c` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_nerve(c: *const WbCategory, trunc: usize, out: *mut *mut WbSSet) -> WbStatus {
    guard(|| {
        let n = nerve(&unsafe { handle(c) }?.0, trunc)?;
        unsafe { put(out, Box::into_raw(Box::new(WbSSet(n)))) }
    })
}

/// Whether the functor `i: A → B` is a Dwyer map. All three are JSON.
///
/// # Safety
/// The strings are NUL-terminated; `is_dwyer` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_dwyer_check(
    a: *const c_char,
    b: *const c_char,
    i: *const c_char,
    is_dwyer: *mut bool,
) -> WbStatus {
    guard(|| {
        let a = category_from(unsafe { text(a) }?)?;
        let b = category_from(unsafe { text(b) }?)?;
        let raw: RawFunctor =
            serde_json::from_str(unsafe { text(i) }?).map_err(|e| Failure(WbStatus::Malformed, e.to_string()))?;
        let i = raw.validate(a, b)?;
        let verdict = match find_dwyer_witness(&i) {
            Ok(w) => w.is_some(),
            Err(Error::NotSieve | Error::NotMonomorphism(_)) => false,
            Err(e) => return Err(e.into()),
        };
        unsafe { put(is_dwyer, verdict) }
    })
}

/// Parses and validates a simplicial set.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_from_json(json: *const c_char, out: *mut *mut WbSSet) -> WbStatus {
    guard(|| {
        let x = FinSSet::from_json(unsafe { text(json) }?)?;
        unsafe { put(out, Box::into_raw(Box::new(WbSSet(x)))) }
    })
}

/// # Safety
/// `x` is null or a live simplicial-set handle.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_free(x: *mut WbSSet) {
    if !x.is_null() {
        drop(unsafe { Box::from_raw(x) });
    }
}

/// Canonical JSON; release with [`wb_string_free`].
///
/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_to_json(x: *const WbSSet, out: *mut *mut c_char) -> WbStatus {
    guard(|| {
        let json = unsafe { handle(x) }?.0.to_json();
        unsafe { put(out, owned_string(json)) }
    })
}

/// Barycentric subdivision.
///
/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_subdivide(x: *const WbSSet, out: *mut *mut WbSSet) -> WbStatus {
    guard(|| {
        let sd = subdivide(&unsafe { handle(x) }?.0)?;
        unsafe { put(out, Box::into_raw(Box::new(WbSSet(sd)))) }
    })
}

/// The fundamental category.
///
/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_categorify(x: *const WbSSet, out: *mut *mut WbCategory) -> WbStatus {
    guard(|| {
        let c = categorify(&unsafe { handle(x) }?.0, workbench::harness::budget_from_env())?;
        unsafe { put(out, Box::into_raw(Box::new(WbCategory(c.cat)))) }
    })
}

/// Betti numbers in degrees `0 ..= len - 1`, written to `betti[0 .. len]`.
///
/// # Safety
/// `x` is a live handle; `betti` is valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn wb_sset_betti(x: *const WbSSet, betti: *mut usize, len: usize) -> WbStatus {
    guard(|| {
        let x = unsafe { handle(x) }?;
        if len == 0 {
            return Ok(());
        }
        if betti.is_null() {
            return Err(null());
        }
        let groups = homology(&x.0, len - 1)?;
        for (k, g) in groups.iter().take(len).enumerate() {
            unsafe { betti.add(k).write(g.betti) };
        }
        Ok(())
    })
}

/// Runs a verification suite. `bound == 0` selects the suite's default.
/// The report JSON goes to `report` (release with [`wb_string_free`]).
///
/// # Safety
/// `suite` is NUL-terminated; the out pointers are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wb_verify(
    suite: *const c_char,
    seed: u64,
    bound: usize,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> WbStatus {
    guard(|| {
        let name = unsafe { text(suite) }?;
        let info = workbench::harness::suite(name)?;
        let bound = if bound == 0 { info.default_bound } else { bound };
        let r = run_suite(name, &Corpus::new(seed, bound))?;
        if report.is_null() || passed.is_null() {
            return Err(null());
        }
        unsafe { put(passed, r.passed) }?;
        unsafe { put(report, owned_string(r.to_json())) }
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn wb_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version has no interior NUL"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn last_error() -> String {
        unsafe { CStr::from_ptr(wb_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn categories_round_trip_through_handles() {
        let json = c(&FinCat::chain(1).to_json());
        let mut cat = ptr::null_mut();
        assert_eq!(unsafe { wb_category_from_json(json.as_ptr(), &mut cat) }, WbStatus::Ok);
        let (mut objects, mut morphisms) = (0, 0);
        assert_eq!(unsafe { wb_category_counts(cat, &mut objects, &mut morphisms) }, WbStatus::Ok);
        assert_eq!((objects, morphisms), (2, 3));
        let (mut poset, mut acyclic) = (false, false);
        assert_eq!(unsafe { wb_category_classify(cat, &mut poset, &mut acyclic) }, WbStatus::Ok);
        assert!(poset && acyclic);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { wb_category_to_json(cat, &mut out) }, WbStatus::Ok);
        assert_eq!(unsafe { CStr::from_ptr(out) }.to_str().unwrap(), FinCat::chain(1).to_json());
        unsafe {
            wb_string_free(out);
            wb_category_free(cat);
        }
    }

    #[test]
    fn errors_carry_status_and_message() {
        let mut cat = ptr::null_mut();
        let bad = c("{\"objects\": [\"a\"]}");
        assert_eq!(unsafe { wb_category_from_json(bad.as_ptr(), &mut cat) }, WbStatus::Malformed);
        assert!(cat.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(unsafe { wb_category_from_json(ptr::null(), &mut cat) }, WbStatus::NullArgument);
        let invalid = [0xffu8, 0];
        assert_eq!(unsafe { wb_category_from_json(invalid.as_ptr().cast(), &mut cat) }, WbStatus::InvalidUtf8);
        let name = c("no-such-suite");
        let (mut passed, mut report) = (false, ptr::null_mut());
        assert_eq!(unsafe { wb_verify(name.as_ptr(), 0, 0, &mut passed, &mut report) }, WbStatus::UnknownSuite);
    }

    #[test]
    fn nerve_subdivision_and_homology() {
        let json = c(&FinCat::chain(1).to_json());
        let mut cat = ptr::null_mut();
        let mut n = ptr::null_mut();
        let mut sd = ptr::null_mut();
        let mut back = ptr::null_mut();
        let mut betti = [9usize; 2];
        unsafe {
            assert_eq!(wb_category_from_json(json.as_ptr(), &mut cat), WbStatus::Ok);
            assert_eq!(wb_nerve(cat, 1, &mut n), WbStatus::Ok);
            assert_eq!(wb_sset_subdivide(n, &mut sd), WbStatus::Ok);
            assert_eq!(wb_sset_betti(sd, betti.as_mut_ptr(), 2), WbStatus::Ok);
            assert_eq!(wb_sset_categorify(sd, &mut back), WbStatus::Ok);
            let (mut objects, mut morphisms) = (0, 0);
            assert_eq!(wb_category_counts(back, &mut objects, &mut morphisms), WbStatus::Ok);
            assert_eq!(objects, 3);
            wb_category_free(back);
            wb_sset_free(sd);
            wb_sset_free(n);
            wb_category_free(cat);
        }
        assert_eq!(betti, [1, 0]);
    }

    #[test]
    fn dwyer_maps_and_suites() {
        let b = Arc::new(FinCat::chain(1));
        let i = workbench::dwyer::full_inclusion(&b, &[0]);
        let (a_json, b_json) = (c(&i.source().to_json()), c(&b.to_json()));
        let i_json = c(&serde_json::to_string(&i.to_raw()).unwrap());
        let mut is_dwyer = false;
        let status = unsafe { wb_dwyer_check(a_json.as_ptr(), b_json.as_ptr(), i_json.as_ptr(), &mut is_dwyer) };
        assert_eq!(status, WbStatus::Ok);
        assert!(is_dwyer);

        let name = c("csd2-posets");
        let (mut passed, mut report) = (false, ptr::null_mut());
        assert_eq!(unsafe { wb_verify(name.as_ptr(), 0, 0, &mut passed, &mut report) }, WbStatus::Ok);
        assert!(passed);
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
        unsafe { wb_string_free(report) };
        assert!(text.contains("\"csd2-posets\""));
    }

    #[test]
    fn version_is_the_package_version() {
        assert_eq!(unsafe { CStr::from_ptr(wb_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
