//! Built-in Lie algebras, each written in a basis adapted to its SU(3)-structure.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_structure_equations, Coframe};
use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::scalars::{FieldElem, Rational};

/// SU(3) class the adapted structure is expected to have.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Family {
    NearlyKahler,
    SymplecticHalfFlat,
    Balanced,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::NearlyKahler => "nearly Kahler",
            Family::SymplecticHalfFlat => "symplectic half-flat",
            Family::Balanced => "balanced",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', ' '], "-").as_str() {
            "nk" | "nearly-kahler" => Ok(Family::NearlyKahler),
            "shf" | "half-flat" | "symplectic-half-flat" => Ok(Family::SymplecticHalfFlat),
            "balanced" => Ok(Family::Balanced),
            _ => Err(Error::InvalidArgument(format!("unknown class {s}; expected nk, shf or balanced"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub family: Family,
    pub description: &'static str,
    /// Structure equations; `None` for the parameterized entry.
    equations: Option<&'static str>,
}

impl CatalogEntry {
    pub fn takes_parameter(&self) -> bool {
        self.equations.is_none()
    }

    /// Builds the coframe. Only `A5,17+R` accepts the parameter `a`
    /// (default 1, nonzero).
    pub fn build(&self, a: Option<&Rational>) -> Result<Coframe> {
        match self.equations {
            Some(eq) => {
                if a.is_some() {
                    return Err(Error::InvalidArgument(format!("{} takes no parameter", self.id)));
                }
                Ok(rename(parse_structure_equations(eq, 6)?, self.id))
            }
            None => {
                let a = a.cloned().unwrap_or_else(Rational::one);
                if a.is_zero() {
                    return Err(Error::InvalidArgument("A5,17+R requires a != 0".into()));
                }
                Ok(a5_17(&a))
            }
        }
    }

    fn matches(&self, name: &str) -> bool {
        let n = normalize(name);
        normalize(self.id) == n || self.aliases.iter().any(|a| normalize(a) == n)
    }
}

fn rename(frame: Coframe, name: &str) -> Coframe {
    let params = frame.params().to_vec();
    Coframe::new(name, frame.d_table().to_vec()).expect("parsed frame is well formed").with_params(params)
}

/// `(a h15 + h35, -a h25 + h45, -h15 + a h35, -h25 - a h45, 0, 0)`.
fn a5_17(a: &Rational) -> Coframe {
    let c = |q: Rational| FieldElem::rational(q);
    let m = |i: usize, j: usize, q: Rational| KForm::monomial(6, &[i, j], c(q));
    let one = Rational::one();
    let d = vec![
        m(1, 5, a.clone()).add(&m(3, 5, one.clone())),
        m(2, 5, -a.clone()).add(&m(4, 5, one.clone())),
        m(1, 5, -one.clone()).add(&m(3, 5, a.clone())),
        m(2, 5, -one).add(&m(4, 5, -a.clone())),
        KForm::zero(6, 2),
        KForm::zero(6, 2),
    ];
    Coframe::new("A5,17+R", d).expect("six 2-forms").with_params(vec![("a".into(), a.clone())])
}

fn normalize(name: &str) -> String {
    let s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '\u{2295}' => '+',
            '\u{211d}' => 'r',
            '\u{2212}' => '-',
            _ => c,
        })
        .collect::<String>()
        .to_lowercase();
    s.strip_suffix("+r").map(str::to_string).unwrap_or(s)
}

// The su(2)+su(2) entry is written in the adapted basis
//   h1 = l1/3 - n1/6, h2 = r3 n1/6, h3 = l2/3 - n2/6, h4 = r3 n2/6,
//   h5 = r3 n3/6,     h6 = -l3/3 + n3/6,
// where dl1 = l23, dl2 = -l13, dl3 = l12 and likewise for n. The
// conversion is checked by `su2_adapted_basis_oracle` below.
const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "su2+su2",
        aliases: &["su(2)+su(2)", "s3xs3"],
        family: Family::NearlyKahler,
        description: "S3 x S3 with its homogeneous nearly Kahler structure",
        equations: Some(
            "(r3h35-3h36-h45-r3h46, 2r3h45, -r3h15+3h16+h25+r3h26, -2r3h25, 2r3h24, -3h13-r3h14-r3h23+h24)",
        ),
    },
    CatalogEntry {
        id: "e11+e11",
        aliases: &["e(1,1)+e(1,1)", "e11e11"],
        family: Family::SymplecticHalfFlat,
        description: "e(1,1)+e(1,1)",
        equations: Some("(0,0,-h14,-h13,h25,-h26)"),
    },
    CatalogEntry {
        id: "g5,1+R",
        aliases: &["g51"],
        family: Family::SymplecticHalfFlat,
        description: "g5,1 + R",
        equations: Some("(0,0,0,h15,0,h13)"),
    },
    CatalogEntry {
        id: "A5,7+R",
        aliases: &["a57", "A5,7^{-1,-1,1}+R"],
        family: Family::SymplecticHalfFlat,
        description: "A5,7^{-1,-1,1} + R",
        equations: Some("(h16,-h26,-h36,h46,0,0)"),
    },
    CatalogEntry {
        id: "A5,17+R",
        aliases: &["a517", "A5,17^{-a,-a,1}+R"],
        family: Family::SymplecticHalfFlat,
        description: "A5,17^{-a,-a,1} + R, parameter a != 0",
        equations: None,
    },
    CatalogEntry {
        id: "g6,N3",
        aliases: &["g6n3"],
        family: Family::SymplecticHalfFlat,
        description: "g6,N3",
        equations: Some("(0,-2h35,0,-h15,0,h13)"),
    },
    CatalogEntry {
        id: "g6,38",
        aliases: &["g638", "g6,38^0"],
        family: Family::SymplecticHalfFlat,
        description: "g6,38^0",
        equations: Some("(2h36,0,-h26,h25-h26,-h23-h24,h23)"),
    },
    CatalogEntry {
        id: "g6,54",
        aliases: &["g654", "g6,54^{0,-1}"],
        family: Family::SymplecticHalfFlat,
        description: "g6,54^{0,-1}",
        equations: Some("(h16/r2+h45,-h26/r2,h25-h36/r2,h46/r2,0,0)"),
    },
    CatalogEntry {
        id: "g6,118",
        aliases: &["g6118", "g6,118^{0,-1,-1}"],
        family: Family::SymplecticHalfFlat,
        description: "g6,118^{0,-1,-1}",
        equations: Some("(-h15+h36,h25+h46,-h16-h35,-h26+h45,0,0)"),
    },
    CatalogEntry {
        id: "h2",
        aliases: &[],
        family: Family::Balanced,
        description: "nilpotent h2",
        equations: Some("(0,0,0,0,2h12+(2r2-2)h13+(-2-2r2)h24-2h34,4r2h12+4r2h23-4r2h34)"),
    },
    CatalogEntry {
        id: "h3",
        aliases: &[],
        family: Family::Balanced,
        description: "nilpotent h3",
        equations: Some("(0,0,0,0,0,-2h12+2h34)"),
    },
    CatalogEntry {
        id: "h4",
        aliases: &[],
        family: Family::Balanced,
        description: "nilpotent h4",
        equations: Some("(0,0,0,0,2h13,h14+h23)"),
    },
    CatalogEntry {
        id: "h5",
        aliases: &[],
        family: Family::Balanced,
        description: "nilpotent h5",
        equations: Some("(0,0,0,0,h13-h24,h14+h23)"),
    },
    CatalogEntry {
        id: "h6",
        aliases: &[],
        family: Family::Balanced,
        description: "nilpotent h6",
        equations: Some("(0,0,0,0,h13,h14)"),
    },
    CatalogEntry {
        id: "h19-",
        aliases: &["h19"],
        family: Family::Balanced,
        description: "nilpotent h19^-",
        equations: Some("(0,0,-h15,-h25,0,-h13-h24)"),
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}

pub fn find(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.matches(name)).ok_or_else(|| Error::UnknownAlgebra {
        name: name.to_string(),
        available: catalog_names().join(", "),
    })
}

/// Looks up an algebra by name or alias and builds its coframe.
pub fn lookup(name: &str, a: Option<&Rational>) -> Result<Coframe> {
    find(name)?.build(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::StaticForm;
    use crate::linalg::inverse;
    use crate::scalars::{int, rat};

    #[test]
    fn every_entry_is_a_lie_algebra() {
        for e in catalog() {
            let f = e.build(None).unwrap();
            assert_eq!(f.dim(), 6);
            assert!(f.validate().passes, "{}", e.id);
        }
        for a in [int(2), rat(-1, 3)] {
            assert!(lookup("A5,17", Some(&a)).unwrap().validate().passes);
        }
    }

    #[test]
    fn render_parse_roundtrip() {
        for e in catalog() {
            let f = e.build(None).unwrap();
            let back = parse_structure_equations(&f.render(), 6).unwrap();
            assert_eq!(back.d_table(), f.d_table(), "{}", e.id);
        }
    }

    #[test]
    fn names_and_aliases() {
        assert_eq!(lookup("g5,1+R", None).unwrap().render(), "(0,0,0,h15,0,h13)");
        assert_eq!(lookup("h19-", None).unwrap().render(), "(0,0,-h15,-h25,0,-h13-h24)");
        assert_eq!(lookup("h3", None).unwrap().render(), "(0,0,0,0,0,-2h12+2h34)");
        assert_eq!(find("A5,17").unwrap().id, "A5,17+R");
        assert_eq!(find("e(1,1)\u{2295}e(1,1)").unwrap().id, "e11+e11");
        assert!(matches!(lookup("bogus", None), Err(Error::UnknownAlgebra { .. })));
        assert!(lookup("h3", Some(&int(2))).is_err());
        assert!(lookup("A5,17", Some(&int(0))).is_err());
        assert_eq!(catalog().len(), 15);
    }

    /// Derives the adapted su(2)+su(2) structure equations from the
    /// `lambda, nu` description, independently of the stored table.
    #[test]
    fn su2_adapted_basis_oracle() {
        // basis e = (l1, l2, l3, n1, n2, n3)
        let e = |i: usize, j: usize| KForm::monomial(6, &[i, j], FieldElem::one());
        let de: Vec<StaticForm> = vec![e(2, 3), e(1, 3).neg(), e(1, 2), e(5, 6), e(4, 6).neg(), e(4, 5)];
        let third = FieldElem::rational(rat(1, 3));
        let sixth = FieldElem::rational(rat(1, 6));
        let r3_6 = FieldElem::sqrt3().scale_rational(&rat(1, 6));
        let z = FieldElem::zero();
        // rows: h^a = sum_b m[a][b] e^b
        let m: Vec<Vec<FieldElem>> = vec![
            vec![third.clone(), z.clone(), z.clone(), -&sixth, z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), r3_6.clone(), z.clone(), z.clone()],
            vec![z.clone(), third.clone(), z.clone(), z.clone(), -&sixth, z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), r3_6.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), r3_6.clone()],
            vec![z.clone(), z.clone(), -&third, z.clone(), z.clone(), sixth.clone()],
        ];
        let minv = inverse(&m).unwrap();
        // e^b as a 1-form in h: sum_a minv[b][a] h^a
        let e_in_h: Vec<StaticForm> = (0..6)
            .map(|b| {
                (0..6).fold(KForm::zero(6, 1), |acc, a| {
                    acc.add(&KForm::monomial(6, &[a + 1], minv[b][a].clone()))
                })
            })
            .collect();
        let to_h = |form: &StaticForm| -> StaticForm {
            let mut out = KForm::zero(6, 2);
            for (idx, c) in form.terms() {
                let ix: Vec<usize> = idx.indices().collect();
                out = out.add(&e_in_h[ix[0] - 1].wedge(&e_in_h[ix[1] - 1]).scale_field(c));
            }
            out
        };
        let stored = lookup("su2+su2", None).unwrap();
        for a in 0..6 {
            let dh_e = (0..6).fold(KForm::zero(6, 2), |acc, b| acc.add(&de[b].scale_field(&m[a][b])));
            assert_eq!(&to_h(&dh_e), stored.dh(a + 1), "dh^{}", a + 1);
        }
    }
}
