//! C ABI for `ordcurve`.
//!
//! Every fallible function returns an [`OrdStatus`]; on failure the message
//! is available from [`ord_last_error`] on the same thread. Objects are
//! opaque handles released with their `*_free` function, and strings
//! returned through `char **` parameters are released with
//! [`ord_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use ordcurve::combinat::{caliber, genus_bound_pi};
use ordcurve::complexes::{check_complex, format_complex, hilbert_function, hilbert_polynomial, parse_complex, probabilistic_exactness, FreeComplex};
use ordcurve::curves::MonomialCurve;
use ordcurve::eagon_northcott::{build_en, random_phi};
use ordcurve::fixtures::{load_fixture, load_fixture_file, verify_fixture, CurveFixture};
use ordcurve::ordinary::{check_sections, SectionOptions};
use ordcurve::polyring::Domain;
use ordcurve::shapes::{add_redundancy, shape3, solve_shape, BettiShape};
use ordcurve::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Consistency = 4,
    NonGenericHyperplane = 5,
    Degenerate = 6,
    Fixture = 7,
    Domain = 8,
    Overflow = 9,
    Panic = 10,
}

/// Resolution shape handle.
pub struct OrdShape(BettiShape);

/// Graded free complex handle.
pub struct OrdComplex(FreeComplex);

/// Built-in or file-loaded fixture handle.
pub struct OrdFixture(CurveFixture);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(OrdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) | Error::DegreeTooSmall { .. } | Error::Monotonicity(_) => OrdStatus::InvalidArgument,
            Error::Syntax { .. } | Error::Inhomogeneous { .. } | Error::EntryDegree { .. } | Error::TwistMismatch(_) => {
                OrdStatus::Parse
            }
            Error::Consistency(_) | Error::ShapeIdentity(_) => OrdStatus::Consistency,
            Error::NonGenericHyperplane(_) => OrdStatus::NonGenericHyperplane,
            Error::Degenerate(_) => OrdStatus::Degenerate,
            Error::Fixture(_) => OrdStatus::Fixture,
            Error::Domain(_) => OrdStatus::Domain,
        };
        Fail(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OrdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            OrdStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            OrdStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(OrdStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(OrdStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out<T>(p: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_i64(v: &BigInt, what: &str) -> Result<i64, Fail> {
    v.to_i64()
        .ok_or_else(|| Fail(OrdStatus::Overflow, format!("{what} = {v} does not fit in 64 bits")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

fn domain(prime: u64) -> Result<Domain, Fail> {
    if prime == 0 {
        Ok(Domain::Rational)
    } else {
        Ok(Domain::prime(prime)?)
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ord_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ord_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ord_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `k0` and `π'(n, d)`.
///
/// # Safety
/// Output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_genus_bound(n: u32, d: u64, k0: *mut u64, pi: *mut i64) -> OrdStatus {
    guard(|| {
        let k = caliber(n, d)?;
        let p = to_i64(&genus_bound_pi(n, d)?, "pi")?;
        out(k0, k, "k0")?;
        out(pi, p, "pi")
    })
}

/// Shape of a maximal-genus curve of degree `d` in `P^n`.
///
/// # Safety
/// `shape` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_solve(n: u32, d: u64, shape: *mut *mut OrdShape) -> OrdStatus {
    guard(|| out(shape, Box::into_raw(Box::new(OrdShape(solve_shape(n, d)?))), "shape"))
}

/// Hilbert–Burch shape for `n = 3`.
///
/// # Safety
/// `shape` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape3(d: u64, shape: *mut *mut OrdShape) -> OrdStatus {
    guard(|| out(shape, Box::into_raw(Box::new(OrdShape(shape3(d)?))), "shape"))
}

/// Shape from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `shape` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_from_json(json: *const c_char, shape: *mut *mut OrdShape) -> OrdStatus {
    guard(|| {
        let s = BettiShape::from_json(str_arg(json, "json")?)?;
        out(shape, Box::into_raw(Box::new(OrdShape(s))), "shape")
    })
}

/// New shape with `u` extra copies of `twist` in blocks `i` and `i + 1`.
///
/// # Safety
/// `shape` must be a live handle; `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_add_redundancy(
    shape: *const OrdShape,
    i: u32,
    twist: i64,
    u: u64,
    result: *mut *mut OrdShape,
) -> OrdStatus {
    guard(|| {
        let s = add_redundancy(&handle(shape, "shape")?.0, i as usize, twist, u)?;
        out(result, Box::into_raw(Box::new(OrdShape(s))), "result")
    })
}

/// JSON form of a shape; free with [`ord_string_free`].
///
/// # Safety
/// `shape` must be a live handle; `json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_to_json(shape: *const OrdShape, json: *mut *mut c_char) -> OrdStatus {
    guard(|| out(json, c_string(handle(shape, "shape")?.0.to_json()), "json"))
}

/// Number of blocks `E_1..E_{n-1}`.
///
/// # Safety
/// `shape` must be a live handle; `count` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_block_count(shape: *const OrdShape, count: *mut u32) -> OrdStatus {
    guard(|| out(count, handle(shape, "shape")?.0.blocks.len() as u32, "count"))
}

/// Number of distinct twists in block `E_i` (`1 <= i <= n-1`).
///
/// # Safety
/// `shape` must be a live handle; `len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_block_len(shape: *const OrdShape, i: u32, len: *mut u32) -> OrdStatus {
    guard(|| {
        let s = &handle(shape, "shape")?.0;
        let b = block(s, i)?;
        out(len, b.len() as u32, "len")
    })
}

fn block(s: &BettiShape, i: u32) -> Result<&[ordcurve::shapes::TwistMult], Fail> {
    if i == 0 || i as usize > s.blocks.len() {
        return Err(Fail(OrdStatus::InvalidArgument, format!("block index {i} out of range")));
    }
    Ok(&s.blocks[i as usize - 1])
}

/// Entry `j` of block `E_i`.
///
/// # Safety
/// `shape` must be a live handle; output pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_block_entry(
    shape: *const OrdShape,
    i: u32,
    j: u32,
    twist: *mut i64,
    mult: *mut u64,
) -> OrdStatus {
    guard(|| {
        let b = block(&handle(shape, "shape")?.0, i)?;
        let tm = b
            .get(j as usize)
            .ok_or_else(|| Fail(OrdStatus::InvalidArgument, format!("entry {j} out of range")))?;
        out(twist, tm.twist, "twist")?;
        out(mult, tm.mult, "mult")
    })
}

/// Degree and genus encoded by a shape.
///
/// # Safety
/// `shape` must be a live handle; output pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_degree_genus(shape: *const OrdShape, d: *mut i64, g: *mut i64) -> OrdStatus {
    guard(|| {
        let (dd, gg) = hilbert_polynomial(&handle(shape, "shape")?.0)?;
        out(d, to_i64(&dd, "d")?, "d")?;
        out(g, to_i64(&gg, "g")?, "g")
    })
}

/// Hilbert function of a shape at `h`.
///
/// # Safety
/// `shape` must be a live handle; `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_hilbert_function(shape: *const OrdShape, h: i64, value: *mut i64) -> OrdStatus {
    guard(|| {
        let v = hilbert_function(&handle(shape, "shape")?.0, h);
        out(value, to_i64(&v, "H(h)")?, "value")
    })
}

/// # Safety
/// `shape` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ord_shape_free(shape: *mut OrdShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// Eagon–Northcott complex of a random linear matrix over `F_prime`
/// (`prime = 0` for the rationals).
///
/// # Safety
/// `complex` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_en_random(n: u32, k0: u64, prime: u64, seed: u64, complex: *mut *mut OrdComplex) -> OrdStatus {
    guard(|| {
        let c = build_en(&random_phi(n, k0, domain(prime)?, seed)?)?;
        out(complex, Box::into_raw(Box::new(OrdComplex(c))), "complex")
    })
}

/// Parse a complex in the text fixture format (rational coefficients).
///
/// # Safety
/// `text` must be a NUL-terminated string; `complex` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_parse(text: *const c_char, complex: *mut *mut OrdComplex) -> OrdStatus {
    guard(|| {
        let c = parse_complex(str_arg(text, "text")?, Domain::Rational)?;
        out(complex, Box::into_raw(Box::new(OrdComplex(c))), "complex")
    })
}

/// Text form of a complex; free with [`ord_string_free`].
///
/// # Safety
/// `complex` must be a live handle; `text` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_to_text(complex: *const OrdComplex, text: *mut *mut c_char) -> OrdStatus {
    guard(|| out(text, c_string(format_complex(&handle(complex, "complex")?.0)), "text"))
}

/// Shape of a complex.
///
/// # Safety
/// `complex` must be a live handle; `shape` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_shape(complex: *const OrdComplex, shape: *mut *mut OrdShape) -> OrdStatus {
    guard(|| {
        let s = handle(complex, "complex")?.0.shape()?;
        out(shape, Box::into_raw(Box::new(OrdShape(s))), "shape")
    })
}

/// Symbolic check that consecutive differentials compose to zero. The
/// JSON report may be requested through `report` (pass null to skip).
///
/// # Safety
/// `complex` must be a live handle; `pass` valid for writes; `report`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_check(complex: *const OrdComplex, pass: *mut bool, report: *mut *mut c_char) -> OrdStatus {
    guard(|| {
        let rep = check_complex(&handle(complex, "complex")?.0);
        out(pass, rep.pass, "pass")?;
        if !report.is_null() {
            report.write(c_string(serde_json::to_string(&rep).expect("JSON")));
        }
        Ok(())
    })
}

/// Rank conditions at `trials` random points over `F_prime` (`0` for the
/// rationals).
///
/// # Safety
/// `complex` must be a live handle; `pass` valid for writes; `report`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_exactness(
    complex: *const OrdComplex,
    trials: u32,
    seed: u64,
    prime: u64,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> OrdStatus {
    guard(|| {
        let rep = probabilistic_exactness(&handle(complex, "complex")?.0, trials as usize, seed, domain(prime)?)?;
        out(pass, rep.pass, "pass")?;
        if !report.is_null() {
            report.write(c_string(serde_json::to_string(&rep).expect("JSON")));
        }
        Ok(())
    })
}

/// # Safety
/// `complex` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ord_complex_free(complex: *mut OrdComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Load a built-in fixture (`"ex1"` or `"ex2"`).
///
/// # Safety
/// `id` must be a NUL-terminated string; `fixture` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_fixture_load(id: *const c_char, fixture: *mut *mut OrdFixture) -> OrdStatus {
    guard(|| {
        let fx = load_fixture(str_arg(id, "id")?)?;
        out(fixture, Box::into_raw(Box::new(OrdFixture(fx))), "fixture")
    })
}

/// Load a fixture from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `fixture` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_fixture_load_file(path: *const c_char, fixture: *mut *mut OrdFixture) -> OrdStatus {
    guard(|| {
        let fx = load_fixture_file(Path::new(str_arg(path, "path")?))?;
        out(fixture, Box::into_raw(Box::new(OrdFixture(fx))), "fixture")
    })
}

/// The fixture's complex (a new handle).
///
/// # Safety
/// `fixture` must be a live handle; `complex` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_fixture_complex(fixture: *const OrdFixture, complex: *mut *mut OrdComplex) -> OrdStatus {
    guard(|| {
        let c = handle(fixture, "fixture")?.0.complex.clone();
        out(complex, Box::into_raw(Box::new(OrdComplex(c))), "complex")
    })
}

/// Full verification pipeline of a fixture.
///
/// # Safety
/// `fixture` must be a live handle; `pass` valid for writes; `report`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_fixture_verify(
    fixture: *const OrdFixture,
    trials: u32,
    seed: u64,
    prime: u64,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> OrdStatus {
    guard(|| {
        let rep = verify_fixture(&handle(fixture, "fixture")?.0, trials as usize, seed, domain(prime)?)?;
        out(pass, rep.pass, "pass")?;
        if !report.is_null() {
            report.write(c_string(serde_json::to_string(&rep).expect("JSON")));
        }
        Ok(())
    })
}

/// # Safety
/// `fixture` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ord_fixture_free(fixture: *mut OrdFixture) {
    if !fixture.is_null() {
        drop(Box::from_raw(fixture));
    }
}

/// Weak and strong ordinariness checks on `count` random hyperplane
/// sections of the monomial curve described by `curve_line`. The strong
/// check runs at each of the `n_strong` degrees in `strong`.
///
/// # Safety
/// `curve_line` must be a NUL-terminated string; `strong` must point to
/// `n_strong` values (or be null when `n_strong = 0`); `pass` valid for
/// writes; `report` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ord_check_sections(
    curve_line: *const c_char,
    count: u32,
    seed: u64,
    strong: *const u32,
    n_strong: usize,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> OrdStatus {
    guard(|| {
        let curve = MonomialCurve::parse(str_arg(curve_line, "curve_line")?)?;
        let strong_degrees = if n_strong == 0 {
            vec![]
        } else if strong.is_null() {
            return Err(null("strong"));
        } else {
            std::slice::from_raw_parts(strong, n_strong).to_vec()
        };
        let opts = SectionOptions {
            count: count as usize,
            seed,
            strong_degrees,
            ..SectionOptions::default()
        };
        let rep = check_sections(&curve, &opts)?;
        out(pass, rep.pass, "pass")?;
        if !report.is_null() {
            report.write(c_string(serde_json::to_string(&rep).expect("JSON")));
        }
        Ok(())
    })
}
