use std::sync::{Arc, OnceLock};

use crate::algebra::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::frobenius::QuotientRing;
use crate::groebner::{buchberger, eliminate, module::tag_components, Ideal};

/// Staircase proof that `B` is a finitely generated `A`-module.
#[derive(Clone, Debug)]
pub struct FinitenessCertificate {
    /// For each adjoined variable, the basis element whose leading term is a
    /// pure power of it (under the order with the adjoined block first).
    pub pure_powers: Vec<(String, Polynomial)>,
    /// Monomials in the adjoined variables spanning `B` over `A`; `1` first.
    pub module_generators: Vec<Polynomial>,
}

/// `B = A[t₁..t_k] / (relations)` over `A = S/I₀`. Ambient variables are the
/// base variables followed by the adjoined ones.
#[derive(Clone, Debug)]
pub struct FiniteExtension {
    name: String,
    base: QuotientRing,
    ambient: Arc<PolyRing>,
    adjoined: Vec<String>,
    relations: Vec<Polynomial>,
    defining: Ideal,
    certificate: OnceLock<FinitenessCertificate>,
}

impl FiniteExtension {
    /// The ring the relations must be written in.
    pub fn ambient_ring(base: &QuotientRing, adjoined: &[String]) -> Result<Arc<PolyRing>> {
        let mut names = base.ring().names().to_vec();
        names.extend(adjoined.iter().cloned());
        let order = match base.ring().order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Grevlex,
        };
        PolyRing::new(base.characteristic() as u64, names, order)
    }

    pub fn new(name: &str, base: &QuotientRing, adjoined: Vec<String>, relations: Vec<Polynomial>) -> Result<Self> {
        let ambient = Self::ambient_ring(base, &adjoined)?;
        if relations.iter().any(|r| **r.ring() != *ambient) {
            return Err(Error::RingMismatch(
                "relations must live in the base ring with the adjoined variables".into(),
            ));
        }
        let n = base.nvars();
        let up: Vec<usize> = (0..n).collect();
        let mut gens = relations.clone();
        gens.extend(
            base.defining_ideal()
                .generators()
                .iter()
                .map(|g| g.map_into(&ambient, &up)),
        );
        let defining = Ideal::new(&ambient, gens);
        let ext = FiniteExtension {
            name: name.to_string(),
            base: base.clone(),
            ambient,
            adjoined,
            relations,
            defining,
            certificate: OnceLock::new(),
        };
        let back = ext.contract_raw(&Ideal::zero(base.ring()))?;
        if !back.equals(base.defining_ideal()) {
            return Err(Error::NotInjective(format!(
                "relations of `{name}` force {} in the base",
                back
            )));
        }
        Ok(ext)
    }

    /// Parse the relations from text and verify module-finiteness.
    pub fn parse(name: &str, base: &QuotientRing, adjoined: &[&str], relations: &[&str]) -> Result<Self> {
        let adjoined: Vec<String> = adjoined.iter().map(|s| s.to_string()).collect();
        let ambient = Self::ambient_ring(base, &adjoined)?;
        let rels = relations
            .iter()
            .map(|s| parse_polynomial(&ambient, s))
            .collect::<Result<Vec<_>>>()?;
        let ext = Self::new(name, base, adjoined, rels)?;
        ext.verify_module_finite()?;
        Ok(ext)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &QuotientRing {
        &self.base
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn adjoined(&self) -> &[String] {
        &self.adjoined
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Relations together with the lifted `I₀`.
    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn nbase(&self) -> usize {
        self.base.nvars()
    }

    pub fn nadjoined(&self) -> usize {
        self.adjoined.len()
    }

    pub fn certificate(&self) -> Result<&FinitenessCertificate> {
        self.certificate
            .get()
            .ok_or_else(|| Error::MissingCertificate(self.name.clone()))
    }

    pub(crate) fn lift(&self, f: &Polynomial) -> Polynomial {
        let up: Vec<usize> = (0..self.nbase()).collect();
        f.map_into(&self.ambient, &up)
    }

    /// Basis of the relations under the order with the adjoined block first,
    /// expressed in a ring whose variables are `t…, x…`.
    fn adjoined_first_basis(&self) -> (Arc<PolyRing>, Vec<Polynomial>) {
        let (n, k) = (self.nbase(), self.nadjoined());
        let mut names = self.adjoined.clone();
        names.extend(self.base.ring().names().iter().cloned());
        let ring = PolyRing::from_parts(*self.ambient.field(), names, MonomialOrder::elimination(k));
        let perm: Vec<usize> = (0..n + k).map(|v| if v < n { k + v } else { v - n }).collect();
        let gens: Vec<Polynomial> = self
            .defining
            .generators()
            .iter()
            .map(|g| g.map_into(&ring, &perm))
            .collect();
        let basis = buchberger::groebner(&ring, &gens, None);
        (ring, basis)
    }

    pub fn verify_module_finite(&self) -> Result<&FinitenessCertificate> {
        if let Some(c) = self.certificate.get() {
            return Ok(c);
        }
        let (n, k) = (self.nbase(), self.nadjoined());
        let (_, basis) = self.adjoined_first_basis();
        let perm_back: Vec<usize> = (0..n + k).map(|v| if v < k { n + v } else { v - k }).collect();
        let mut pure_powers = Vec::new();
        let mut bounds = Vec::new();
        for i in 0..k {
            let found = basis.iter().find(|g| {
                let e = g.leading_monomial().unwrap().exponents();
                e[i] > 0 && e.iter().enumerate().all(|(v, &x)| v == i || x == 0)
            });
            match found {
                Some(g) => {
                    bounds.push(g.leading_monomial().unwrap().exponents()[i]);
                    pure_powers.push((self.adjoined[i].clone(), g.map_into(&self.ambient, &perm_back)));
                }
                None => return Err(Error::NotModuleFinite(self.adjoined[i].clone())),
            }
        }
        let t_leads: Vec<Vec<u32>> = basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
            .filter(|e| e[k..].iter().all(|&x| x == 0))
            .map(|e| e[..k].to_vec())
            .collect();
        let mut stairs: Vec<Vec<u32>> = vec![Vec::new()];
        for &b in &bounds {
            stairs = stairs
                .into_iter()
                .flat_map(|s| {
                    (0..b).map(move |a| {
                        let mut s = s.clone();
                        s.push(a);
                        s
                    })
                })
                .collect();
        }
        stairs.retain(|s| !t_leads.iter().any(|l| l.iter().zip(s).all(|(a, b)| a <= b)));
        let mut gens: Vec<Polynomial> = stairs
            .into_iter()
            .map(|s| {
                let mut e = vec![0u32; n];
                e.extend(s);
                self.ambient.monomial(Monomial::from_exponents(&e), 1)
            })
            .collect();
        gens.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.canonical_cmp(a)));
        let _ = self.certificate.set(FinitenessCertificate {
            pure_powers,
            module_generators: gens,
        });
        Ok(self.certificate.get().unwrap())
    }

    fn contract_raw(&self, i: &Ideal) -> Result<Ideal> {
        let n = self.nbase();
        let k = self.nadjoined();
        let lifted = self.defining.with(i.generators().iter().map(|g| self.lift(g)));
        let keep: Vec<bool> = (0..n + k).map(|v| v < n).collect();
        let e = eliminate(&lifted, &keep)?;
        let down: Vec<usize> = (0..n + k).map(|v| if v < n { v } else { 0 }).collect();
        let gens = e
            .generators()
            .iter()
            .map(|g| g.map_into(self.base.ring(), &down))
            .collect();
        Ok(self.base.lift(&Ideal::new(self.base.ring(), gens)))
    }

    /// `IB ∩ A`, as an ideal of `S` containing `I₀`.
    pub fn contract_ideal(&self, i: &Ideal) -> Result<Ideal> {
        self.certificate()?;
        self.contract_raw(i)
    }

    /// Generators of the `A`-linear relations among the module generators:
    /// vectors `a ∈ S^N` with `Σ a_j g_j = 0` in `B`.
    ///
    /// Tags `e₀` and `f_1..f_N` make this a module computation: from
    /// `e₀·G` (G a relation of B) and `e₀·g_j + f_j`, eliminate `e₀` and the
    /// adjoined variables; what remains is `Σ a_j f_j` with `a_j ∈ S`.
    pub fn module_relations(&self) -> Result<Vec<Vec<Polynomial>>> {
        let cert = self.certificate()?;
        let gens = &cert.module_generators;
        let (n, k, nm) = (self.nbase(), self.nadjoined(), gens.len());
        let mut names = vec!["%e".to_string()];
        names.extend(self.adjoined.iter().cloned());
        names.extend((0..nm).map(|j| format!("%f{j}")));
        names.extend(self.base.ring().names().iter().cloned());
        let total = 1 + k + nm + n;
        let aux = PolyRing::from_parts(*self.ambient.field(), names, MonomialOrder::Block(vec![1, 1 + k]));
        let into_aux: Vec<usize> = (0..n + k)
            .map(|v| if v < n { 1 + k + nm + v } else { 1 + (v - n) })
            .collect();
        let tags: Vec<bool> = (0..total).map(|v| v == 0 || (1 + k..1 + k + nm).contains(&v)).collect();
        let e0 = Monomial::variable(total, 0);
        let mut input: Vec<Polynomial> = self
            .defining
            .generators()
            .iter()
            .map(|g| g.map_into(&aux, &into_aux).mul_term(&e0, 1))
            .collect();
        for (j, g) in gens.iter().enumerate() {
            let f = aux.monomial(Monomial::variable(total, 1 + k + j), 1);
            input.push(g.map_into(&aux, &into_aux).mul_term(&e0, 1).add(&f));
        }
        let basis = buchberger::groebner(&aux, &input, Some(&tags));
        let allowed: Vec<bool> = (0..total).map(|v| v > k).collect();
        let down: Vec<usize> = (0..total).map(|v| v.saturating_sub(1 + k + nm)).collect();
        Ok(basis
            .iter()
            .filter(|g| g.uses_only(&allowed))
            .map(|g| tag_components(g, 1 + k, nm, self.base.ring(), &down))
            .collect())
    }
}
