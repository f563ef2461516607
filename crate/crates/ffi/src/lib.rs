//! C ABI over `linepack`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `lp_*_free`. Every fallible call returns an [`LpStatus`]; on
//! failure the message is available from [`lp_last_error_message`] on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use linepack::frames::{packing_report, projective_reduce, GramMatrix};
use linepack::heisenberg::{heis_etf_gram, AbelianGroupSpec, GammaTwist, Parity};
use linepack::idempotents::{
    central_primitive_idempotents, projection_from_subset, IsotypicDecomposition,
};
use linepack::permgroup::{
    induced_pair_action, regular_action, GroupAction, Permutation, PermutationGroup,
};
use linepack::scheme::{is_commutative, scheme_from_action, SchurianScheme};
use linepack::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// Status codes. The nonzero library codes match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    InputError = 2,
    NumericError = 3,
    ResourceError = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Which set the group acts on when building a scheme.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpAction {
    Natural = 0,
    OrderedPairs = 1,
    Regular = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpParity {
    Even = 0,
    Odd = 1,
}

/// Packing summary of a Gram matrix.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LpReport {
    pub n: usize,
    pub d: usize,
    pub coherence: f64,
    pub welch: f64,
    pub is_real: bool,
    pub is_etf: bool,
    pub is_tight: bool,
    pub welch_met: bool,
    pub orthoplex_met: bool,
    pub levenstein_met: bool,
}

pub struct LpGroup(PermutationGroup);
pub struct LpScheme(SchurianScheme);
pub struct LpDecomposition(IsotypicDecomposition);
pub struct LpGram(GramMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LpStatus {
    match e.exit_code() {
        3 => LpStatus::NumericError,
        4 => LpStatus::ResourceError,
        _ => LpStatus::InputError,
    }
}

enum Failure {
    Lib(Error),
    Status(LpStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null() -> Failure {
    Failure::Status(LpStatus::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LpStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_scalar<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = value;
    Ok(())
}

unsafe fn input_slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(slice::from_raw_parts(p, len))
}

/// Copies `data` into `out`; `needed` always receives the full length.
unsafe fn copy_out<T: Copy>(
    data: &[T],
    out: *mut T,
    len: usize,
    needed: *mut usize,
) -> Result<(), Failure> {
    if !needed.is_null() {
        *needed = data.len();
    }
    if out.is_null() && len == 0 {
        return Ok(());
    }
    if out.is_null() {
        return Err(null());
    }
    if len < data.len() {
        return Err(Failure::Status(
            LpStatus::BufferTooSmall,
            format!("buffer holds {len} items, {} needed", data.len()),
        ));
    }
    ptr::copy_nonoverlapping(data.as_ptr(), out, data.len());
    Ok(())
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(LpStatus::InputError, "string is not valid UTF-8".into()))
}

/// Message of the last failed call on this thread. Owned by the library;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"degree": n, "generators": [[images..], ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_group_from_json(
    json: *const c_char,
    out: *mut *mut LpGroup,
) -> LpStatus {
    guard(|| {
        let g = PermutationGroup::from_json(input_str(json)?)?;
        put(out, LpGroup(g))
    })
}

/// Builds a group from `count` generators stored back to back, each as
/// `degree` 0-based images.
///
/// # Safety
/// `images` must hold `degree * count` values.
#[no_mangle]
pub unsafe extern "C" fn lp_group_from_images(
    degree: usize,
    images: *const u32,
    count: usize,
    out: *mut *mut LpGroup,
) -> LpStatus {
    guard(|| {
        let len = degree
            .checked_mul(count)
            .ok_or_else(|| Failure::Status(LpStatus::InputError, "size overflow".into()))?;
        let data = input_slice(images, len)?;
        let gens = if degree == 0 {
            Vec::new()
        } else {
            data.chunks(degree)
                .map(|c| Permutation::new(c.to_vec()))
                .collect::<Result<Vec<_>, _>>()?
        };
        put(out, LpGroup(PermutationGroup::new(degree, gens)?))
    })
}

/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_group_degree(group: *const LpGroup, out: *mut usize) -> LpStatus {
    guard(|| write_scalar(out, get(group)?.0.degree()))
}

/// Group order; fails with a resource error when it does not fit in 64 bits.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_group_order(group: *const LpGroup, out: *mut u64) -> LpStatus {
    guard(|| {
        let order = get(group)?.0.order();
        let v = order.to_u64().ok_or_else(|| {
            Failure::Status(
                LpStatus::ResourceError,
                format!("order {order} exceeds 64 bits"),
            )
        })?;
        write_scalar(out, v)
    })
}

/// # Safety
/// `group` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_group_free(group: *mut LpGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Orbital scheme of the chosen transitive action. `element_limit` bounds the
/// group size for the regular action.
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_scheme_new(
    group: *const LpGroup,
    action: LpAction,
    element_limit: usize,
    out: *mut *mut LpScheme,
) -> LpStatus {
    guard(|| {
        let g = get(group)?.0.clone();
        let base = GroupAction::natural(g);
        let act = match action {
            LpAction::Natural => base,
            LpAction::OrderedPairs => induced_pair_action(&base)?,
            LpAction::Regular => regular_action(&base.group, element_limit)?,
        };
        put(out, LpScheme(scheme_from_action(&act)?))
    })
}

/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_scheme_point_count(
    scheme: *const LpScheme,
    out: *mut usize,
) -> LpStatus {
    guard(|| write_scalar(out, get(scheme)?.0.point_count()))
}

/// Orbital valencies; pass a null buffer with `len == 0` to query the count.
///
/// # Safety
/// `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lp_scheme_valencies(
    scheme: *const LpScheme,
    out: *mut usize,
    len: usize,
    needed: *mut usize,
) -> LpStatus {
    guard(|| copy_out(get(scheme)?.0.valencies(), out, len, needed))
}

/// # Safety
/// `scheme` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_scheme_is_commutative(
    scheme: *const LpScheme,
    out: *mut bool,
) -> LpStatus {
    guard(|| write_scalar(out, is_commutative(&get(scheme)?.0)))
}

/// # Safety
/// `scheme` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_scheme_free(scheme: *mut LpScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Primitive central idempotents of the adjacency algebra.
///
/// # Safety
/// `scheme` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_decompose(
    scheme: *const LpScheme,
    seed: u64,
    tol: f64,
    out: *mut *mut LpDecomposition,
) -> LpStatus {
    guard(|| {
        let dec = central_primitive_idempotents(&get(scheme)?.0, seed, tol)?;
        put(out, LpDecomposition(dec))
    })
}

/// Ranks of the idempotents, in decomposition order.
///
/// # Safety
/// `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lp_decomposition_ranks(
    dec: *const LpDecomposition,
    out: *mut usize,
    len: usize,
    needed: *mut usize,
) -> LpStatus {
    guard(|| copy_out(&get(dec)?.0.ranks, out, len, needed))
}

/// Multiplicity of each constituent in the permutation representation.
///
/// # Safety
/// `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lp_decomposition_multiplicities(
    dec: *const LpDecomposition,
    out: *mut usize,
    len: usize,
    needed: *mut usize,
) -> LpStatus {
    guard(|| copy_out(&get(dec)?.0.multiplicities, out, len, needed))
}

/// # Safety
/// `dec` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_decomposition_trivial_index(
    dec: *const LpDecomposition,
    out: *mut usize,
) -> LpStatus {
    guard(|| write_scalar(out, get(dec)?.0.trivial_index))
}

/// # Safety
/// `dec` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_decomposition_free(dec: *mut LpDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// The projection onto the sum of the listed constituents.
///
/// # Safety
/// `subset` must hold `len` indices.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_from_subset(
    dec: *const LpDecomposition,
    subset: *const usize,
    len: usize,
    out: *mut *mut LpGram,
) -> LpStatus {
    guard(|| {
        let g = projection_from_subset(&get(dec)?.0, input_slice(subset, len)?)?;
        put(out, LpGram(g))
    })
}

/// A Gram matrix from `n * n` complex entries in row-major order, stored as
/// interleaved `(re, im)` pairs.
///
/// # Safety
/// `entries` must hold `2 * n * n` values.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_from_entries(
    n: usize,
    entries: *const f64,
    out: *mut *mut LpGram,
) -> LpStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .and_then(|x| x.checked_mul(2))
            .ok_or_else(|| Failure::Status(LpStatus::InputError, "size overflow".into()))?;
        let data = input_slice(entries, len)?;
        let m = DMatrix::from_fn(n, n, |i, j| {
            let k = 2 * (i * n + j);
            Complex64::new(data[k], data[k + 1])
        });
        put(out, LpGram(GramMatrix::try_new(m)?))
    })
}

/// Gram matrix of the Heisenberg ETF over `Z_{m_1} × ⋯ × Z_{m_k}`.
///
/// # Safety
/// `moduli` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lp_heisenberg_gram(
    moduli: *const u32,
    len: usize,
    gamma: u32,
    parity: LpParity,
    out: *mut *mut LpGram,
) -> LpStatus {
    guard(|| {
        let spec = AbelianGroupSpec::new(input_slice(moduli, len)?.to_vec())?;
        let twist = GammaTwist::new(&spec, gamma)?;
        let p = match parity {
            LpParity::Even => Parity::Even,
            LpParity::Odd => Parity::Odd,
        };
        put(out, LpGram(heis_etf_gram(&spec, twist, p).to_gram()))
    })
}

/// Keeps one column per class of unimodularly proportional columns. When
/// `class_map` is non-null it receives, for each of the `n` original columns,
/// the index of its representative.
///
/// # Safety
/// `class_map` is null or holds `n` values.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_reduce(
    gram: *const LpGram,
    tol: f64,
    class_map: *mut usize,
    out: *mut *mut LpGram,
) -> LpStatus {
    guard(|| {
        let g = &get(gram)?.0;
        let red = projective_reduce(g, tol)?;
        if !class_map.is_null() {
            ptr::copy_nonoverlapping(red.class_map.as_ptr(), class_map, red.class_map.len());
        }
        put(out, LpGram(red.gram))
    })
}

/// # Safety
/// `gram` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_size(gram: *const LpGram, out: *mut usize) -> LpStatus {
    guard(|| write_scalar(out, get(gram)?.0.n()))
}

/// Entries as interleaved `(re, im)` pairs in row-major order; `2 n²` values.
///
/// # Safety
/// `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_entries(
    gram: *const LpGram,
    out: *mut f64,
    len: usize,
    needed: *mut usize,
) -> LpStatus {
    guard(|| {
        let g = &get(gram)?.0;
        let e = g.entries();
        let flat: Vec<f64> = e
            .row_iter()
            .flat_map(|r| r.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect();
        copy_out(&flat, out, len, needed)
    })
}

/// Coherence, bounds and ETF flags after normalizing the diagonal.
///
/// # Safety
/// `gram` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_report(
    gram: *const LpGram,
    tol: f64,
    out: *mut LpReport,
) -> LpStatus {
    guard(|| {
        let g = &get(gram)?.0;
        if g.n() == 0 {
            return Err(Error::input("empty Gram matrix").into());
        }
        let d0 = g.entries()[(0, 0)].re;
        let normalized = GramMatrix::try_new(g.entries().map(|z| z / d0))?;
        let r = packing_report(&normalized, tol)?;
        write_scalar(
            out,
            LpReport {
                n: r.n,
                d: r.d,
                coherence: r.coherence,
                welch: r.welch,
                is_real: normalized.is_real(1e-12),
                is_etf: r.is_etf,
                is_tight: r.is_tight,
                welch_met: r.welch_met,
                orthoplex_met: r.orthoplex_met,
                levenstein_met: r.levenstein_met,
            },
        )
    })
}

/// Gram JSON (`{"n", "entries": [[[re, im], ..], ..]}`); release with [`lp_string_free`].
///
/// # Safety
/// `gram` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_to_json(gram: *const LpGram, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let text = get(gram)?.0.to_json()?;
        let c =
            CString::new(text).map_err(|e| Failure::Status(LpStatus::InputError, e.to_string()))?;
        write_scalar(out, c.into_raw())
    })
}

/// # Safety
/// `gram` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_gram_free(gram: *mut LpGram) {
    if !gram.is_null() {
        drop(Box::from_raw(gram));
    }
}
