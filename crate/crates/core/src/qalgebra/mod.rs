//! Exact coefficient arithmetic in the formal variable `x = q^{1/2}`.

mod laurent;
mod ratio;
mod symmetric;
mod zpoly;

pub use laurent::{qnum, qnum_product, QLaurent};
pub use ratio::{field_arith, FieldOp, QRatio};
pub use symmetric::{
    parse_rational, pole_extract, t_image_summary, t_k_in_t, to_t_poly, to_y_poly,
    PoleDecomposition, PoleMode, RatPoly, TImageSummary, TPoly, YPoly,
};

/// `[k]` as a ratio.
pub fn qnum_ratio(k: i64) -> QRatio {
    qnum(k).into()
}

/// `t = [1]^2`.
pub fn t_ratio() -> QRatio {
    (&qnum(1) * &qnum(1)).into()
}
