//! Sequence cost `f(N)^{|Ω̂|}` and domain planning under a polynomial budget.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::codes::count_parameters;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cdd,
    Nudd,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cdd => "cdd",
            Family::Nudd => "nudd",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cdd" => Ok(Family::Cdd),
            "nudd" => Ok(Family::Nudd),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}, expected cdd or nudd"))),
        }
    }
}

/// Per-generator interval factor: `2^N` for CDD, `N + 1` for NUDD.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCostModel")]
pub struct CostModel {
    pub family: Family,
    pub order: u32,
    pub f_of_n: u64,
}

#[derive(Deserialize)]
struct RawCostModel {
    family: Family,
    order: u32,
    f_of_n: u64,
}

impl TryFrom<RawCostModel> for CostModel {
    type Error = Error;
    fn try_from(raw: RawCostModel) -> Result<Self> {
        let m = CostModel::new(raw.family, raw.order)?;
        if m.f_of_n != raw.f_of_n {
            return Err(Error::InvalidParameter(format!(
                "f(N) = {} does not match {} at N = {}",
                raw.f_of_n, raw.family, raw.order
            )));
        }
        Ok(m)
    }
}

impl CostModel {
    /// CDD orders above 63 would overflow `2^N`.
    pub fn new(family: Family, order: u32) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidParameter("order N must be at least 1".into()));
        }
        let f_of_n = match family {
            Family::Cdd => 1u64.checked_shl(order).filter(|_| order < 64),
            Family::Nudd => Some(order as u64 + 1),
        }
        .ok_or_else(|| Error::InvalidParameter(format!("CDD order {order} too large")))?;
        Ok(Self {
            family,
            order,
            f_of_n,
        })
    }
}

/// Exact `f(N)^{omega_size}`.
pub fn cost(omega_size: u64, model: &CostModel) -> BigUint {
    let mut out = BigUint::one();
    let f = BigUint::from(model.f_of_n);
    let mut base = f;
    let mut e = omega_size;
    while e > 0 {
        if e & 1 == 1 {
            out *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    out
}

/// Domain layout for `k_total` logical qubits.
///
/// `levels = 0` marks an infeasible budget; the remaining fields then
/// describe the cheapest candidate, one level of the base code. When
/// `k_total` is not a multiple of `domain_size_logical`, the last domain
/// holds `last_domain_size` qubits and cost is quoted for a full domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainPlan {
    pub k_total: u64,
    pub base_n: u64,
    pub base_k: u64,
    pub base_r: u64,
    pub model: CostModel,
    pub budget_exponent: u32,
    /// `k_total^p`.
    #[serde(with = "crate::bigint_serde")]
    pub budget: BigUint,
    /// Largest `W` with `f(N)^W ≤ k_total^p`.
    pub generator_budget: u64,
    pub levels: u32,
    #[serde(with = "crate::bigint_serde")]
    pub domain_size_logical: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub physical_qubits_per_domain: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub domain_count: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub last_domain_size: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub omega_size_per_domain: BigUint,
    #[serde(with = "crate::bigint_serde")]
    pub cost_per_domain: BigUint,
    pub within_budget: bool,
}

/// Deepest concatenation whose SLDD cost fits within `k_total^p`, decided
/// by exact integer comparison.
pub fn plan_domains(
    k_total: u64,
    base: (u64, u64, u64),
    model: CostModel,
    budget_exponent: u32,
) -> Result<DomainPlan> {
    if k_total < 1 || budget_exponent < 1 {
        return Err(Error::InvalidParameter("need k_total >= 1 and p >= 1".into()));
    }
    let (n, k, r) = base;
    count_parameters(n, k, r, 1)?;
    let budget = BigUint::from(k_total).pow(budget_exponent);

    let f = BigUint::from(model.f_of_n);
    let mut w = 0u64;
    let mut power = f.clone();
    while power <= budget {
        w += 1;
        power *= &f;
    }

    let w_big = BigUint::from(w);
    let mut levels = 0u32;
    while count_parameters(n, k, r, levels + 1)?.omega_size <= w_big {
        levels += 1;
    }

    let shown = count_parameters(n, k, r, levels.max(1))?;
    let omega = u64::try_from(&shown.omega_size)
        .map_err(|_| Error::ResourceLimit(format!("|Ω̂| = {} too large", shown.omega_size)))?;
    let cost_per_domain = cost(omega, &model);
    let k_big = BigUint::from(k_total);
    let domain_count = (&k_big + &shown.l_r - 1u32) / &shown.l_r;
    let remainder = &k_big % &shown.l_r;
    let last_domain_size = if remainder == BigUint::ZERO {
        shown.l_r.clone()
    } else {
        remainder
    };
    Ok(DomainPlan {
        k_total,
        base_n: n,
        base_k: k,
        base_r: r,
        model,
        budget_exponent,
        within_budget: levels >= 1 && cost_per_domain <= budget,
        budget,
        generator_budget: w,
        levels,
        domain_size_logical: shown.l_r,
        physical_qubits_per_domain: shown.n_r,
        domain_count,
        last_domain_size,
        omega_size_per_domain: shown.omega_size,
        cost_per_domain,
    })
}
