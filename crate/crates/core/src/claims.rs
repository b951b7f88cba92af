//! Closed-form parameter statements for each family, checked against what
//! the construction actually delivers.
//!
//! A code statement `[n, k, >= d]` holds when n and k agree exactly and the
//! stated distance does not exceed the designed distance `n - r`. A quantum
//! statement `[[n, k, >= d]]` holds when n and `n - 2k` agree and the stated
//! distance does not exceed the dual designed distance.

use serde::Serialize;

use crate::families::{Family, Layout};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub label: &'static str,
    pub text: String,
    pub holds: bool,
    /// Set for the worked examples with fully numeric parameters.
    pub example: bool,
}

/// What a construction delivers, in the form the statements talk about.
#[derive(Clone, Copy, Debug)]
pub struct Achieved {
    pub n: u64,
    pub k: u64,
    pub designed: u64,
    pub dual_designed: Option<u64>,
}

struct Ctx {
    q: u64,
    got: Achieved,
}

impl Ctx {
    fn code(&self, label: &'static str, n: u64, k: Option<u64>, d: i64) -> Claim {
        let kt = k.map_or("?".to_string(), |k| k.to_string());
        let holds = n == self.got.n && k.is_none_or(|k| k == self.got.k) && d <= self.got.designed as i64;
        Claim {
            label,
            text: format!("[{n},{kt},>={d}]_{}", self.q * self.q),
            holds,
            example: false,
        }
    }

    fn quantum(&self, label: &'static str, n: u64, k: i64, d: i64) -> Claim {
        let got_k = self.got.n as i64 - 2 * self.got.k as i64;
        let holds = n == self.got.n && k == got_k && self.got.dual_designed.is_some_and(|dd| d <= dd as i64);
        Claim {
            label,
            text: format!("[[{n},{k},>={d}]]_{}", self.q),
            holds,
            example: false,
        }
    }
}

/// Worked examples: family instance and the statements printed for it.
pub const EXAMPLES: &[(&str, &[&str])] = &[
    ("herm-as 8 3 20", &["[176,14,>=156]_64", "[[176,148,>=8]]_8"]),
    ("herm-as 27 7 181", &["[4941,104,>=4760]_729", "[[4941,4733,>=27]]_27"]),
    ("eucl-as 5 3 35", &["[65,32,>=29]_25"]),
    ("eucl-subspace 27 5 3630", &["[6561,3280,>=2929]_729"]),
];

fn example_key(family: &Family) -> Option<String> {
    let key = match *family {
        Family::HermAs { q, m, r } => format!("herm-as {q} {m} {r}"),
        Family::EuclAs { q, m, r } => format!("eucl-as {q} {m} {r}"),
        Family::EuclSubspace { q, dim, r } => format!("eucl-subspace {q} {dim} {r}"),
        _ => return None,
    };
    Some(key)
}

/// Statements applying to `family` at its current r.
pub fn claims_for(family: &Family, layout: &Layout, got: Achieved) -> Vec<Claim> {
    let Some(q) = family.q().map(u64::from) else {
        // GRS/EGRS: self-dual MDS
        let n = got.n;
        let ctx = Ctx { q: 1, got };
        let mut c = ctx.code("mds", n, Some(n / 2), (n - n / 2 + 1) as i64);
        c.text = format!("[{n},{},{}] MDS", n / 2, n - n / 2 + 1);
        return vec![c];
    };
    let r = family.r().unwrap_or(0) as i64;
    let g = layout.genus as i64;
    let n = layout.n as u64;
    let ni = n as i64;
    let qi = q as i64;
    let ctx = Ctx { q, got };
    let general = |ctx: &Ctx| ctx.code("code", n, Some((r - g + 1).max(0) as u64), ni - r);
    let self_dual = layout.window.r_selfdual == Some(r) && n % 2 == 0;
    let almost = n % 2 == 1 && 2 * r == ni - 1 + 2 * g - 2;
    let mut out = Vec::new();
    match *family {
        Family::HermAs { m, .. } => {
            let m = m as i64;
            out.push(general(&ctx));
            out.push(ctx.quantum(
                "quantum",
                (m * qi * qi - m * qi + qi) as u64,
                m * qi * qi - m - 2 * r - 1,
                r - m * qi + m + qi + 1,
            ));
        }
        Family::HermMult { .. } => out.push(ctx.code("code", n, None, ni - r)),
        Family::HermAdd { .. } => {
            if r == qi * qi - qi - 1 {
                let n0 = (qi * qi * qi - qi * qi) as u64;
                out.push(ctx.code("code", n0, Some((qi * (qi - 1) / 2) as u64), qi * qi * qi - 2 * qi * qi + qi - 1));
                out.push(ctx.quantum(
                    "quantum",
                    n0,
                    qi * qi * qi - 2 * qi * qi + qi + 4,
                    qi * qi * qi - 2 * qi * qi + qi + 1,
                ));
            }
        }
        Family::EuclAs { m, .. } => {
            let m = m as i64;
            out.push(general(&ctx));
            if self_dual {
                out.push(ctx.code("self-dual", n, Some(n / 2), ni / 2 - g + 1));
            }
            if almost && r == (m * qi * qi - m) / 2 - 1 {
                out.push(ctx.code("almost-self-dual", n, Some((n - 1) / 2), (m * qi * qi + m + 1) / 2 - (m - 1) * qi));
            }
        }
        Family::EuclUnity { s, .. } => {
            let s = s as i64;
            out.push(general(&ctx));
            if self_dual {
                out.push(ctx.code("self-dual", n, Some(n / 2), ni / 2 - g + 1));
            }
            if almost && qi % 2 == 1 && s % 2 == 0 && s >= qi - 2 {
                out.push(ctx.code("almost-self-dual", n, Some((n - 1) / 2), (qi * (s - qi + 2) + 3) / 2));
            }
        }
        Family::EuclUnityComp { k, .. } => {
            let k = k as i64;
            // the stated distance n + g - 1 exceeds n - r for every admissible r
            out.push(ctx.code("code", n, Some((r - g + 1).max(0) as u64), qi * qi * qi + g - qi * k - 1));
            if self_dual {
                out.push(ctx.code("self-dual", n, Some(n / 2), ni / 2 - g + 1));
            }
            if almost && qi % 2 == 0 {
                out.push(ctx.code("almost-self-dual", n, Some((n - 1) / 2), ni / 2 - g + 1));
            }
        }
        Family::EuclSubspace { .. } => {
            out.push(general(&ctx));
            if self_dual {
                out.push(ctx.code("self-dual", n, Some(n / 2), ni / 2 - qi * (qi + 1) / 2 + 1));
            }
            if almost && qi % 2 == 1 {
                out.push(ctx.code("almost-self-dual", n, Some((n - 1) / 2), (ni - qi * (qi - 1) - 1) / 2));
            }
        }
        Family::CosetEgrs { .. } | Family::CosetGrs { .. } => {
            out.push(general(&ctx));
            if self_dual {
                out.push(ctx.code("self-dual", n, Some(n / 2), ni / 2 + 1 - g));
            }
            if almost {
                out.push(ctx.code("almost-self-dual", n, Some((n - 1) / 2), (ni + 1) / 2 + 1 - g));
            }
        }
        Family::Grs { .. } | Family::Egrs { .. } => unreachable!(),
    }
    if let Some(key) = example_key(family) {
        if let Some((_, texts)) = EXAMPLES.iter().find(|(k, _)| *k == key) {
            for c in &mut out {
                c.example = texts.contains(&c.text.as_str());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn achieved(f: &Family) -> (Layout, Achieved) {
        let layout = f.layout().unwrap().unwrap();
        let code = f.build().unwrap();
        let r = f.r().unwrap();
        let g = layout.genus as u64;
        let got = Achieved {
            n: layout.n as u64,
            k: code.k as u64,
            designed: layout.n as u64 - r,
            dual_designed: (r + 2 > 2 * g).then(|| r + 2 - 2 * g),
        };
        (layout, got)
    }

    #[test]
    fn herm_as_example() {
        let f = Family::HermAs { q: 8, m: 3, r: 20 };
        let (layout, got) = achieved(&f);
        let c = claims_for(&f, &layout, got);
        assert_eq!(c[0].text, "[176,14,>=156]_64");
        assert_eq!(c[1].text, "[[176,148,>=8]]_8");
        assert!(c.iter().all(|c| c.holds && c.example));
    }

    #[test]
    fn herm_add_quantum_dimension_differs() {
        let f = Family::HermAdd { q: 3, r: 5 };
        let (layout, got) = achieved(&f);
        let c = claims_for(&f, &layout, got);
        assert_eq!(c[0].text, "[18,3,>=11]_9");
        assert!(c[0].holds);
        assert_eq!(c[1].text, "[[18,16,>=13]]_3");
        assert!(!c[1].holds);
    }

    #[test]
    fn eucl_as_almost_self_dual() {
        let f = Family::EuclAs { q: 5, m: 3, r: 35 };
        let (layout, got) = achieved(&f);
        let c = claims_for(&f, &layout, got);
        let a = c.iter().find(|c| c.label == "almost-self-dual").unwrap();
        assert_eq!(a.text, "[65,32,>=29]_25");
        assert!(a.holds && a.example);
    }

    #[test]
    fn unity_comp_distance_overstated() {
        let f = Family::EuclUnityComp { q: 3, k: 4, r: 9 };
        let (layout, got) = achieved(&f);
        let c = claims_for(&f, &layout, got);
        assert!(!c[0].holds);
    }
}
