//! Serializable report records.

use serde::Serialize;

use crate::formula::{Identity, Residual, Route, SideValue, VerificationReport};
use crate::test_function::{Bump, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RouteRecord {
    pub route: Route,
    pub re: f64,
    pub im: f64,
    pub trunc_err: f64,
    pub quad_err: f64,
}

impl From<&SideValue> for RouteRecord {
    fn from(side: &SideValue) -> Self {
        Self {
            route: side.route,
            re: side.value.re,
            im: side.value.im,
            trunc_err: side.truncation_error,
            quad_err: side.quadrature_error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub p: u64,
    pub r: usize,
    pub a: i64,
}

/// `[A, c, h]` per bump.
pub fn alpha_record(alpha: &TestFunction) -> Vec<[f64; 3]> {
    alpha.terms().iter().map(|b: &Bump| [b.amplitude, b.center, b.half_width]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub identity: Identity,
    pub curve: CurveRecord,
    pub alpha: Vec<[f64; 3]>,
    pub routes: Vec<RouteRecord>,
    pub residuals: Vec<Residual>,
    pub pass: bool,
}

impl IdentityRecord {
    pub fn new(report: &VerificationReport, curve: CurveRecord, alpha: &TestFunction) -> Self {
        Self {
            identity: report.identity,
            curve,
            alpha: alpha_record(alpha),
            routes: report.routes.iter().map(RouteRecord::from).collect(),
            residuals: report.residuals.clone(),
            pass: report.pass,
        }
    }
}
