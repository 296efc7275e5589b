//! Bessel and Fourier–Jacobi recipes, metaplectic change of psi, the Prasad
//! theta maps and the see-saw consistency check.

use num_traits::One;

use crate::error::{Error, Result};
use crate::f2::{Embedding, SignCharacter};
use crate::lfactors::{epsilon_half, epsilon_sign, l_regular_at, require_generic};
use crate::localfield::{FormVariant, OrthSpaceLabel, Sign, SquareClass};
use crate::packets::{central_sign, component_group, ComponentGroup, EnhancedParam};
use crate::wdalg::{GroupKind, Rational, TwistedChar, WdRep};

/// The pair of recipe characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipePair {
    /// Character of A_M.
    pub chi_on_m: SignCharacter,
    /// Character of A_N^+.
    pub chi_on_n: SignCharacter,
}

/// Bessel recipe output with the groups it lives on.
#[derive(Debug, Clone)]
pub struct BesselRecipe {
    pub group_m: ComponentGroup,
    pub group_n: ComponentGroup,
    pub pair: RecipePair,
}

/// Fourier–Jacobi recipe output.
#[derive(Debug, Clone)]
pub struct FjRecipe {
    pub group_m: ComponentGroup,
    pub group_n: ComponentGroup,
    pub group_n1: ComponentGroup,
    pub n1: WdRep,
    /// chi_M on A_{N_1}^+ before restriction.
    pub chi_m_on_n1: SignCharacter,
    /// A_N^+ into A_{N_1}^+.
    pub embedding: Embedding,
    pub pair: RecipePair,
}

fn det_at_minus_one(r: &WdRep) -> Result<Sign> {
    let m1 = r.field().class_of(-1)?;
    r.det().eval_sign(m1)
}

fn half_dim(r: &WdRep) -> u64 {
    r.dim() as u64 / 2
}

/// chi at a pair (X, Y): eps(X ⊗ Y) det(X)(-1)^{dim Y/2} det(Y)(-1)^{dim X/2}.
fn recipe_value(x: &WdRep, y: &WdRep) -> Result<Sign> {
    let eps = epsilon_sign(&x.tensor(y)?)?;
    Ok(eps * det_at_minus_one(x)?.pow(half_dim(y)) * det_at_minus_one(y)?.pow(half_dim(x)))
}

fn recipe_characters(
    m: &WdRep,
    gm: &ComponentGroup,
    n: &WdRep,
    gn: &ComponentGroup,
) -> Result<RecipePair> {
    let chi_on_m =
        SignCharacter::from_fn(&gm.full(), |a| recipe_value(&gm.minus_eigenspace(a), n))?;
    let chi_on_n = SignCharacter::from_fn(gn.plus(), |b| recipe_value(m, &gn.minus_eigenspace(b)))?;
    Ok(RecipePair { chi_on_m, chi_on_n })
}

fn even_orthogonal_kind(n: &WdRep) -> Result<GroupKind> {
    let det = n.det();
    if !det.is_self_dual() {
        return Err(Error::Classification {
            kind: "SO-even".into(),
            reason: "determinant is not quadratic".into(),
        });
    }
    Ok(GroupKind::SoEven {
        disc: det.finite.quad,
    })
}

/// The Bessel recipe for a symplectic phi_M and even-orthogonal phi_N.
pub fn bessel_recipe(phi_m: &WdRep, phi_n: &WdRep) -> Result<BesselRecipe> {
    phi_m.field().check_same(phi_n.field())?;
    phi_m.require_quadratic()?;
    phi_n.require_quadratic()?;
    let group_m = component_group(phi_m, GroupKind::SoOdd)?;
    let group_n = component_group(phi_n, even_orthogonal_kind(phi_n)?)?;
    let pair = recipe_characters(phi_m, &group_m, phi_n, &group_n)?;
    Ok(BesselRecipe {
        group_m,
        group_n,
        pair,
    })
}

/// The Fourier–Jacobi recipe for a symplectic phi_M and odd-orthogonal
/// det-trivial phi_N, through N_1 = N ⊕ 1.
pub fn fj_recipe(phi_m: &WdRep, phi_n: &WdRep) -> Result<FjRecipe> {
    phi_m.field().check_same(phi_n.field())?;
    phi_m.require_quadratic()?;
    phi_n.require_quadratic()?;
    let group_m = component_group(phi_m, GroupKind::Mp)?;
    let group_n = component_group(phi_n, GroupKind::Sp)?;
    let n1 = phi_n.sum(&WdRep::trivial(phi_n.field()));
    let group_n1 = component_group(
        &n1,
        GroupKind::SoEven {
            disc: phi_n.field().one(),
        },
    )?;
    let full = recipe_characters(phi_m, &group_m, &n1, &group_n1)?;
    let embedding = group_n.embedding_into(&group_n1, |x| x.clone())?;
    let chi_on_n = full.chi_on_n.pull_back(&embedding, group_n.plus())?;
    Ok(FjRecipe {
        group_m,
        group_n,
        group_n1,
        n1,
        chi_m_on_n1: full.chi_on_n,
        embedding,
        pair: RecipePair {
            chi_on_m: full.chi_on_m,
            chi_on_n,
        },
    })
}

/// a -> eps(M^a) eps(M^a ⊗ chi_c) chi_c(-1)^{dim M^a / 2} on the full group.
fn mp_shift(group: &ComponentGroup, c: SquareClass) -> Result<SignCharacter> {
    let chi_c = TwistedChar::quadratic(c, Rational::from(0));
    let c_at_minus_one = chi_c.eval_sign(c.field().class_of(-1)?)?;
    SignCharacter::from_fn(&group.full(), |a| {
        let ma = group.minus_eigenspace(a);
        let value = epsilon_half(&ma)? * epsilon_half(&ma.twist(c))?;
        Ok(value.to_sign()? * c_at_minus_one.pow(half_dim(&ma)))
    })
}

fn require_mp(e: &EnhancedParam, op: &'static str) -> Result<()> {
    if e.kind != GroupKind::Mp {
        return Err(Error::WrongKind {
            op,
            kind: e.kind.name(),
        });
    }
    Ok(())
}

/// Replace psi by psi_c on the metaplectic side.
pub fn mp_change_psi(e: &EnhancedParam, c: SquareClass) -> Result<EnhancedParam> {
    require_mp(e, "mp_change_psi")?;
    e.phi.require_quadratic()?;
    let phi_c = e.phi.twist(c);
    let target = component_group(&phi_c, GroupKind::Mp)?;
    let chi_c = TwistedChar::quadratic(c, Rational::from(0));
    let emb = e.group.embedding_into(&target, |x| x.twist(&chi_c))?;
    let shifted = e.eta.mul(&mp_shift(&e.group, c)?)?;
    let pairs = (0..e.group.rank())
        .map(|i| Ok((emb.apply(1 << i), shifted.eval(1 << i)?)))
        .collect::<Result<Vec<_>>>()?;
    let eta = SignCharacter::from_values(&target.full(), &pairs)?;
    EnhancedParam::new(GroupKind::Mp, phi_c, eta, e.label.try_mul(c)?)
}

/// Theta lift from Mp(W_2n) to SO(V_{2n+1}) of discriminant c (or -c on the dual side).
pub fn mp_theta_odd(e: &EnhancedParam, c: SquareClass, dual_side: bool) -> Result<EnhancedParam> {
    require_mp(e, "mp_theta_odd")?;
    let c = if dual_side {
        c.try_mul(c.field().class_of(-1)?)?
    } else {
        c
    };
    let lifted = mp_change_psi(e, c)?;
    EnhancedParam::new(GroupKind::SoOdd, lifted.phi, lifted.eta, c)
}

/// A character known on a subgroup, with all its extensions.
#[derive(Debug, Clone)]
pub struct PartialCharacter {
    pub base: SignCharacter,
    pub ambient: ComponentGroup,
    pub embedding: Embedding,
    pub extensions: Vec<SignCharacter>,
}

/// Output of a Prasad map.
#[derive(Debug, Clone)]
pub struct ThetaLift {
    pub phi: WdRep,
    pub kind: GroupKind,
    pub label: SquareClass,
    pub partial: PartialCharacter,
}

impl ThetaLift {
    pub fn candidates(&self) -> Result<Vec<EnhancedParam>> {
        self.partial
            .extensions
            .iter()
            .map(|eta| EnhancedParam::new(self.kind, self.phi.clone(), eta.clone(), self.label))
            .collect()
    }

    /// The extension living on the form selected by `variant` (+ is quasi-split).
    pub fn select(&self, variant: FormVariant) -> Result<EnhancedParam> {
        let want = match variant {
            FormVariant::Plus => Sign::Plus,
            FormVariant::Minus => Sign::Minus,
        };
        let mut hits = Vec::new();
        for cand in self.candidates()? {
            let s = match self.kind {
                GroupKind::SoEven { .. } => central_sign(&cand)?,
                _ => Sign::Plus,
            };
            if s == want {
                hits.push(cand);
            }
        }
        match hits.len() {
            1 => Ok(hits.pop().expect("one element")),
            0 => Err(Error::Ambiguous(format!(
                "no extension on the {variant:?} form"
            ))),
            k => Err(Error::Ambiguous(format!(
                "{k} extensions on the {variant:?} form"
            ))),
        }
    }
}

fn lift(
    source: &EnhancedParam,
    phi: WdRep,
    kind: GroupKind,
    twist: SquareClass,
) -> Result<ThetaLift> {
    let ambient = component_group(&phi, kind)?;
    let chi = TwistedChar::quadratic(twist, Rational::from(0));
    let embedding = source.group.embedding_into(&ambient, |x| x.twist(&chi))?;
    let extensions = source.eta.extensions(&embedding, ambient.plus())?;
    Ok(ThetaLift {
        phi,
        kind,
        label: source.label,
        partial: PartialCharacter {
            base: source.eta.clone(),
            ambient,
            embedding,
            extensions,
        },
    })
}

/// Sp(W_2n) to O(V_{2n+2}): phi' = (phi ⊗ chi_V) ⊕ 1.
pub fn prasad_p1(e: &EnhancedParam, v: &OrthSpaceLabel) -> Result<ThetaLift> {
    if e.kind != GroupKind::Sp {
        return Err(Error::WrongKind {
            op: "prasad_p1",
            kind: e.kind.name(),
        });
    }
    e.field().check_same(v.disc.field())?;
    if v.dim != e.phi.dim() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "parameter of dim {} needs a space of dim {}, got {}",
            e.phi.dim(),
            e.phi.dim() + 1,
            v.dim
        )));
    }
    let phi = e.phi.twist(v.disc).sum(&WdRep::trivial(e.field()));
    lift(e, phi, GroupKind::SoEven { disc: v.disc }, v.disc)
}

/// O(V_2n) to Sp(W_2n): phi = (phi' ⊗ chi_V) ⊕ chi_V.
pub fn prasad_p2(e: &EnhancedParam) -> Result<ThetaLift> {
    let GroupKind::SoEven { disc } = e.kind else {
        return Err(Error::WrongKind {
            op: "prasad_p2",
            kind: e.kind.name(),
        });
    };
    let phi = e.phi.twist(disc).sum(&WdRep::quad_char(disc));
    lift(e, phi, GroupKind::Sp, disc)
}

/// Lambda^2((phi ⊗ chi_V) ⊕ 1) = Lambda^2(phi) ⊕ (phi ⊗ chi_V).
pub fn verify_adjoint_factorization(phi: &WdRep, chi_v: SquareClass) -> Result<bool> {
    phi.require_kind(GroupKind::Sp)?;
    phi.field().check_same(chi_v.field())?;
    let twisted = phi.twist(chi_v);
    let lhs = twisted.sum(&WdRep::trivial(phi.field())).ext_square();
    let rhs = phi.ext_square().sum(&twisted);
    Ok(lhs == rhs)
}

/// Options for the see-saw check.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeesawOptions {
    pub allow_nontempered: bool,
}

/// One cell of the see-saw table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeesawEntry {
    /// Element of A_M.
    pub a: u64,
    /// Element of A_{phi_N}^+.
    pub b: u64,
    pub direct: Sign,
    pub transported: Sign,
}

#[derive(Debug, Clone)]
pub struct SeesawReport {
    pub pass: bool,
    pub d: SquareClass,
    pub group_m: ComponentGroup,
    pub group_n: ComponentGroup,
    pub table: Vec<SeesawEntry>,
    pub witness: Option<SeesawEntry>,
}

/// Whether d is an admissible auxiliary class: L(s, phi_N ⊗ chi_d) regular at 1.
pub fn seesaw_admissible(phi_n: &WdRep, d: SquareClass) -> bool {
    l_regular_at(&phi_n.twist(d), Rational::one())
}

/// Compare the Fourier–Jacobi recipe with its transport through the
/// Bessel recipe along the see-saw built from chi_d.
pub fn verify_fj_seesaw(
    phi_m: &WdRep,
    phi_n: &WdRep,
    d: SquareClass,
    opts: SeesawOptions,
) -> Result<SeesawReport> {
    let field = phi_m.field();
    field.check_same(phi_n.field())?;
    field.check_same(d.field())?;
    phi_m.require_quadratic()?;
    phi_n.require_quadratic()?;
    if phi_n.dim() != phi_m.dim() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "dim N = {} must be dim M + 1 = {}",
            phi_n.dim(),
            phi_m.dim() + 1
        )));
    }
    require_generic(phi_m, GroupKind::Mp)?;
    require_generic(phi_n, GroupKind::Sp)?;
    if !opts.allow_nontempered && !(phi_m.is_tempered() && phi_n.is_tempered()) {
        return Err(Error::MalformedParameter(
            "non-tempered input; enable allow_nontempered".into(),
        ));
    }
    if !seesaw_admissible(phi_n, d) {
        return Err(Error::NotGeneric(format!(
            "1 in L(s, phi_N ⊗ chi_{d}); d is not admissible"
        )));
    }

    let fj = fj_recipe(phi_m, phi_n)?;

    let m_param = EnhancedParam::trivial(GroupKind::Mp, phi_m.clone(), field.one())?;
    let tau = mp_change_psi(&m_param, d)?;
    let chi_d = TwistedChar::quadratic(d, Rational::from(0));
    let tau_emb = fj.group_m.embedding_into(&tau.group, |x| x.twist(&chi_d))?;

    let n_param = EnhancedParam::trivial(GroupKind::Sp, phi_n.clone(), field.one())?;
    let v = OrthSpaceLabel::new(phi_n.dim() + 1, d, FormVariant::Plus)?;
    let sigma = prasad_p1(&n_param, &v)?;
    let iota = &sigma.partial.embedding;

    let bessel = bessel_recipe(&tau.phi, &sigma.phi)?;
    let tau_to_b = tau.group.embedding_into(&bessel.group_m, |x| x.clone())?;
    let sigma_to_b = sigma
        .partial
        .ambient
        .embedding_into(&bessel.group_n, |x| x.clone())?;

    let minus_one = field.class_of(-1)?;
    let eta_n = fj.group_n.eta_c(minus_one)?;
    let eta_sigma = sigma.partial.ambient.eta_c(minus_one)?;

    let mut table = Vec::new();
    for a in fj.group_m.full().elements() {
        let a_tau = tau_emb.apply(a);
        let direct_a = fj.pair.chi_on_m.eval(a)?;
        let shift = tau.eta.eval(a_tau)?;
        let bessel_a = bessel.pair.chi_on_m.eval(tau_to_b.apply(a_tau))?;
        for b in fj.group_n.plus().elements() {
            let b_sigma = iota.apply(b);
            let direct = direct_a * fj.pair.chi_on_n.eval(b)?;
            let ratio = eta_n.eval(b)? * eta_sigma.eval(b_sigma)?;
            let bessel_b = bessel.pair.chi_on_n.eval(sigma_to_b.apply(b_sigma))?;
            let transported = bessel_a * bessel_b * shift * ratio;
            table.push(SeesawEntry {
                a,
                b,
                direct,
                transported,
            });
        }
    }
    let witness = table.iter().find(|e| e.direct != e.transported).cloned();
    Ok(SeesawReport {
        pass: witness.is_none(),
        d,
        group_m: fj.group_m,
        group_n: fj.group_n,
        table,
        witness,
    })
}
