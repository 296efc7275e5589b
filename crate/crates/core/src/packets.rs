//! Component groups A_phi, A_phi^+, the characters eta_c, Whittaker-datum
//! changes and central signs.

use crate::error::{Error, Result};
use crate::f2::{Embedding, SignCharacter, Subgroup};
use crate::localfield::{PAdicField, Sign, SquareClass};
use crate::wdalg::{GroupKind, WdIrred, WdRep};

/// A_phi with its basis of distinct same-sign self-dual constituents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroup {
    pub kind: GroupKind,
    field: PAdicField,
    basis: Vec<(WdIrred, u32)>,
    plus: Subgroup,
}

pub fn component_group(phi: &WdRep, kind: GroupKind) -> Result<ComponentGroup> {
    phi.require_kind(kind)?;
    let want = if kind.orthogonal() {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let basis: Vec<(WdIrred, u32)> = phi
        .iter()
        .filter(|(x, _)| x.parity_sign() == Some(want))
        .map(|(x, m)| (x.clone(), m))
        .collect();
    let odd_mask = basis
        .iter()
        .enumerate()
        .filter(|(_, (x, _))| x.n % 2 == 1)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    let plus = Subgroup::kernel_of(basis.len(), odd_mask);
    Ok(ComponentGroup {
        kind,
        field: phi.field(),
        basis,
        plus,
    })
}

impl ComponentGroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(WdIrred, u32)] {
        &self.basis
    }

    pub fn full(&self) -> Subgroup {
        Subgroup::full(self.rank())
    }

    pub fn plus(&self) -> &Subgroup {
        &self.plus
    }

    /// The subgroup on which enhancement characters live for this kind.
    pub fn domain(&self) -> Subgroup {
        match self.kind {
            GroupKind::Sp | GroupKind::SoEven { .. } => self.plus.clone(),
            GroupKind::SoOdd | GroupKind::Mp => self.full(),
        }
    }

    pub fn index_of(&self, x: &WdIrred) -> Option<usize> {
        self.basis.iter().position(|(y, _)| y == x)
    }

    /// "a1+a3" style name (1-based), "0" for the identity.
    pub fn element_name(&self, v: u64) -> String {
        let names: Vec<String> = (0..self.rank())
            .filter(|i| v >> i & 1 == 1)
            .map(|i| format!("a{}", i + 1))
            .collect();
        if names.is_empty() {
            "0".into()
        } else {
            names.join("+")
        }
    }

    /// M^a: one copy of each supported basis constituent.
    pub fn minus_eigenspace(&self, a: u64) -> WdRep {
        let mut out = WdRep::zero(self.field);
        for (i, (x, _)) in self.basis.iter().enumerate() {
            if a >> i & 1 == 1 {
                out.add(x.clone(), 1);
            }
        }
        out
    }

    /// Image of -1 in the component group.
    pub fn central_element(&self) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| m % 2 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// eta_c(a) = det(M^a)(c), as a character of the full group.
    pub fn eta_c(&self, c: SquareClass) -> Result<SignCharacter> {
        self.field.check_same(c.field())?;
        SignCharacter::from_fn(&self.full(), |a| {
            self.minus_eigenspace(a).det().eval_sign(c)
        })
    }

    /// Linear map sending a_i to the basis vector of `map(M_i)` in `target`.
    pub fn embedding_into<F>(&self, target: &ComponentGroup, map: F) -> Result<Embedding>
    where
        F: Fn(&WdIrred) -> WdIrred,
    {
        let images = self
            .basis
            .iter()
            .map(|(x, _)| {
                let y = map(x);
                target.index_of(&y).map(|j| 1u64 << j).ok_or_else(|| {
                    Error::MalformedParameter(format!(
                        "{} has no counterpart in the target group",
                        crate::dsl::print_irred(x)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Embedding { images })
    }
}

/// eta_c for (phi, kind), on the full group A_phi.
pub fn eta_c(phi: &WdRep, kind: GroupKind, c: SquareClass) -> Result<SignCharacter> {
    component_group(phi, kind)?.eta_c(c)
}

/// A parameter with its character and Whittaker (or psi) label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnhancedParam {
    pub kind: GroupKind,
    pub phi: WdRep,
    pub group: ComponentGroup,
    pub eta: SignCharacter,
    pub label: SquareClass,
}

impl EnhancedParam {
    pub fn new(
        kind: GroupKind,
        phi: WdRep,
        eta: SignCharacter,
        label: SquareClass,
    ) -> Result<Self> {
        let group = component_group(&phi, kind)?;
        phi.field().check_same(label.field())?;
        if eta.domain() != group.domain() {
            return Err(Error::OutsideDomain(format!(
                "character domain does not match the {kind} domain"
            )));
        }
        Ok(EnhancedParam {
            kind,
            phi,
            group,
            eta,
            label,
        })
    }

    pub fn trivial(kind: GroupKind, phi: WdRep, label: SquareClass) -> Result<Self> {
        let group = component_group(&phi, kind)?;
        let eta = SignCharacter::trivial(&group.domain());
        EnhancedParam::new(kind, phi, eta, label)
    }

    /// Character given by its values on a_1, ..., a_m, restricted to the kind's domain.
    pub fn with_basis_values(
        kind: GroupKind,
        phi: WdRep,
        values: &[Sign],
        label: SquareClass,
    ) -> Result<Self> {
        let group = component_group(&phi, kind)?;
        if values.len() != group.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of rank {}",
                values.len(),
                group.rank()
            )));
        }
        let pairs: Vec<(u64, Sign)> = values
            .iter()
            .enumerate()
            .map(|(i, &s)| (1 << i, s))
            .collect();
        let full = SignCharacter::from_values(&group.full(), &pairs)?;
        let eta = full.restrict(&group.domain())?;
        EnhancedParam::new(kind, phi, eta, label)
    }

    pub fn field(&self) -> PAdicField {
        self.phi.field()
    }
}

/// Change the Whittaker datum from the current label to c2.
pub fn whittaker_change(e: &EnhancedParam, c2: SquareClass) -> Result<EnhancedParam> {
    if !matches!(e.kind, GroupKind::Sp | GroupKind::SoEven { .. }) {
        return Err(Error::WrongKind {
            op: "whittaker_change",
            kind: e.kind.name(),
        });
    }
    let shift = e
        .group
        .eta_c(c2.try_mul(e.label)?)?
        .restrict(&e.group.domain())?;
    Ok(EnhancedParam {
        eta: e.eta.mul(&shift)?,
        label: c2,
        ..e.clone()
    })
}

/// The contragredient on the parameter side: eta times eta_{-1}.
pub fn dual_enhanced(e: &EnhancedParam) -> Result<EnhancedParam> {
    if e.kind != GroupKind::Sp {
        return Err(Error::WrongKind {
            op: "dual_enhanced",
            kind: e.kind.name(),
        });
    }
    let minus_one = e.field().class_of(-1)?;
    let shift = e.group.eta_c(minus_one)?.restrict(&e.group.domain())?;
    Ok(EnhancedParam {
        eta: e.eta.mul(&shift)?,
        ..e.clone()
    })
}

/// eta at the image of -1; +1 exactly for the quasi-split pure inner form.
pub fn central_sign(e: &EnhancedParam) -> Result<Sign> {
    if !matches!(e.kind, GroupKind::SoOdd | GroupKind::SoEven { .. }) {
        return Err(Error::WrongKind {
            op: "central_sign",
            kind: e.kind.name(),
        });
    }
    let z = e.group.central_element();
    e.eta.eval(z).map_err(|_| {
        Error::OutsideDomain(format!(
            "central element {} is not in the domain of eta",
            e.group.element_name(z)
        ))
    })
}
