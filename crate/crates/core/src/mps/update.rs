//! Local updates of the Vidal tensors after a unitary acts on adjacent sites.

use rug::Float;

use super::state::{MpsState, Site};
use crate::eigen::{eigh, DiagOptions};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{MpComplex, MpReal};

/// Θ(p, a, c) for `width` consecutive sites, flattened as `(p·ml + a)·mr + c`.
struct Theta {
    width: usize,
    ml: usize,
    mr: usize,
    data: Vec<MpComplex>,
}

impl Theta {
    fn phys(&self) -> usize {
        1 << self.width
    }

    #[inline]
    fn at(&self, p: usize, a: usize, c: usize) -> &MpComplex {
        &self.data[(p * self.ml + a) * self.mr + c]
    }
}

/// Schmidt basis retained on one side of a cut.
struct Side {
    values: Vec<MpReal>,
    vectors: Matrix,
}

impl MpsState {
    /// Θ = u · Γ_l λ_l Γ_{l+1} ⋯ Γ_{l+width-1}.
    fn theta(&self, u: &Matrix, l: usize, width: usize) -> Theta {
        let p = self.prec;
        let first = &self.sites[l];
        let ml = first.left;
        let mut mr = first.right;
        let mut t = first.data.clone();
        let mut phys = 2;
        for s in l + 1..l + width {
            let site = &self.sites[s];
            let lam = &self.bonds[s - 1];
            let nr = site.right;
            let mut next = vec![MpComplex::zero(p); phys * 2 * ml * nr];
            for q in 0..phys {
                for a in 0..ml {
                    for b in 0..mr {
                        let x = t[(q * ml + a) * mr + b].scale(&lam[b]);
                        if x.is_zero() {
                            continue;
                        }
                        for i in 0..2 {
                            let row = ((q * 2 + i) * ml + a) * nr;
                            for c in 0..nr {
                                next[row + c].add_mul(&x, site.at(i, b, c));
                            }
                        }
                    }
                }
            }
            t = next;
            phys *= 2;
            mr = nr;
        }
        let block = ml * mr;
        let mut data = vec![MpComplex::zero(p); phys * block];
        for r in 0..phys {
            for k in 0..phys {
                let urk = &u[(r, k)];
                if urk.is_zero() {
                    continue;
                }
                for e in 0..block {
                    data[r * block + e].add_mul(urk, &t[k * block + e]);
                }
            }
        }
        Theta {
            width,
            ml,
            mr,
            data,
        }
    }

    /// Reduced density matrix of the leftmost qubit and the left bond.
    fn rho_left(&self, th: &Theta, wl: &[MpReal], wr: &[MpReal]) -> Matrix {
        let p = self.prec;
        let rest = th.phys() / 2;
        let ml = th.ml;
        let dim = 2 * ml;
        let wr2: Vec<MpReal> = wr.iter().map(|x| x.clone().square()).collect();
        let mut rho = Matrix::zeros(dim, dim, p);
        for x in 0..dim {
            let (i, a) = (x / ml, x % ml);
            for y in x..dim {
                let (i2, a2) = (y / ml, y % ml);
                let mut acc = MpComplex::zero(p);
                for r in 0..rest {
                    for c in 0..th.mr {
                        let t = th.at(i * rest + r, a, c).scale(&wr2[c]);
                        acc.add_mul_conj(&t, th.at(i2 * rest + r, a2, c));
                    }
                }
                let w = Float::with_val(p, &wl[a] * &wl[a2]);
                store_hermitian(&mut rho, x, y, acc.scale(&w));
            }
        }
        rho
    }

    /// Reduced density matrix of the rightmost qubit and the right bond.
    fn rho_right(&self, th: &Theta, wl: &[MpReal], wr: &[MpReal]) -> Matrix {
        let p = self.prec;
        let rest = th.phys() / 2;
        let mr = th.mr;
        let dim = 2 * mr;
        let wl2: Vec<MpReal> = wl.iter().map(|x| x.clone().square()).collect();
        let mut rho = Matrix::zeros(dim, dim, p);
        for x in 0..dim {
            let (k, d) = (x / mr, x % mr);
            for y in x..dim {
                let (k2, d2) = (y / mr, y % mr);
                let mut acc = MpComplex::zero(p);
                for r in 0..rest {
                    for a in 0..th.ml {
                        let t = th.at(r * 2 + k, a, d).scale(&wl2[a]);
                        acc.add_mul_conj(&t, th.at(r * 2 + k2, a, d2));
                    }
                }
                let w = Float::with_val(p, &wr[d] * &wr[d2]);
                store_hermitian(&mut rho, x, y, acc.scale(&w));
            }
        }
        rho
    }

    /// Dominant eigenpairs of ρ above the truncation floor, capped at
    /// `m_trunc` when a cap is set.
    fn schmidt(&self, rho: &Matrix) -> Result<Side> {
        let opts = DiagOptions {
            seed: self.seed,
            floor: Some(self.trunc_eps.clone()),
            max_count: (self.m_trunc > 0).then_some(self.m_trunc),
        };
        let (values, vectors) = eigh(rho, self.prec, &opts)?;
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "state norm vanished during an update".into(),
            ));
        }
        let vectors = vectors.with_prec(self.prec);
        let values = values
            .into_iter()
            .map(|v| Float::with_val(self.prec, v))
            .collect();
        Ok(Side { values, vectors })
    }

    /// Normalized bond vector √(p / Σp).
    fn bond_vector(&self, values: &[MpReal]) -> Vec<MpReal> {
        let p = self.prec;
        let total = values.iter().fold(Float::new(p), |acc, v| acc + v);
        values
            .iter()
            .map(|v| Float::with_val(p, v / &total).sqrt())
            .collect()
    }

    /// Applies a 4×4 unitary to sites `l` and `l + 1`.
    pub(crate) fn two_site(&mut self, u: &Matrix, l: usize) -> Result<()> {
        let p = self.prec;
        let th = self.theta(u, l, 2);
        let wl = self.left_weights(l);
        let wr = self.right_weights(l + 1);
        let (ml, mr) = (th.ml, th.mr);
        let (left, right) = if ml <= mr {
            let side = self.schmidt(&self.rho_left(&th, &wl, &wr))?;
            let m = side.values.len();
            let mut gl = Site::zeros(ml, m, p);
            let mut gr = Site::zeros(m, mr, p);
            for x in 0..m {
                for i in 0..2 {
                    for a in 0..ml {
                        let k = gl.idx(i, a, x);
                        gl.data[k] = divide(&side.vectors[(i * ml + a, x)], &wl[a]);
                    }
                }
                let norm = side.values[x].clone().sqrt().recip();
                for j in 0..2 {
                    for c in 0..mr {
                        let mut acc = MpComplex::zero(p);
                        for i in 0..2 {
                            for a in 0..ml {
                                let cw = side.vectors[(i * ml + a, x)].scale(&wl[a]);
                                acc.add_mul_conj(th.at(i * 2 + j, a, c), &cw);
                            }
                        }
                        let k = gr.idx(j, x, c);
                        gr.data[k] = acc.scale(&norm);
                    }
                }
            }
            let lam = self.bond_vector(&side.values);
            self.bonds[l] = lam;
            (gl, gr)
        } else {
            let side = self.schmidt(&self.rho_right(&th, &wl, &wr))?;
            let m = side.values.len();
            let mut gl = Site::zeros(ml, m, p);
            let mut gr = Site::zeros(m, mr, p);
            for y in 0..m {
                for j in 0..2 {
                    for c in 0..mr {
                        let k = gr.idx(j, y, c);
                        gr.data[k] = divide(&side.vectors[(j * mr + c, y)], &wr[c]);
                    }
                }
                let norm = side.values[y].clone().sqrt().recip();
                for i in 0..2 {
                    for a in 0..ml {
                        let mut acc = MpComplex::zero(p);
                        for j in 0..2 {
                            for c in 0..mr {
                                let dw = side.vectors[(j * mr + c, y)].scale(&wr[c]);
                                acc.add_mul_conj(th.at(i * 2 + j, a, c), &dw);
                            }
                        }
                        let k = gl.idx(i, a, y);
                        gl.data[k] = acc.scale(&norm);
                    }
                }
            }
            let lam = self.bond_vector(&side.values);
            self.bonds[l] = lam;
            (gl, gr)
        };
        self.sites[l] = left;
        self.sites[l + 1] = right;
        self.note_ranks();
        Ok(())
    }

    /// Applies an 8×8 unitary to sites `l`, `l + 1` and `l + 2`.
    pub(crate) fn three_site(&mut self, u: &Matrix, l: usize) -> Result<()> {
        let p = self.prec;
        let th = self.theta(u, l, 3);
        let wl = self.left_weights(l);
        let wr = self.right_weights(l + 2);
        let (ml, mr) = (th.ml, th.mr);
        let cs = self.schmidt(&self.rho_left(&th, &wl, &wr))?;
        let ds = self.schmidt(&self.rho_right(&th, &wl, &wr))?;
        let (mx, my) = (cs.values.len(), ds.values.len());

        let mut g0 = Site::zeros(ml, mx, p);
        for i in 0..2 {
            for a in 0..ml {
                for x in 0..mx {
                    let k = g0.idx(i, a, x);
                    g0.data[k] = divide(&cs.vectors[(i * ml + a, x)], &wl[a]);
                }
            }
        }
        let mut g2 = Site::zeros(my, mr, p);
        for k in 0..2 {
            for d in 0..mr {
                for y in 0..my {
                    let at = g2.idx(k, y, d);
                    g2.data[at] = divide(&ds.vectors[(k * mr + d, y)], &wr[d]);
                }
            }
        }

        // contract the left basis first: half(j, k, x, d)
        let mut half = vec![MpComplex::zero(p); 4 * mx * mr];
        for x in 0..mx {
            let cw: Vec<MpComplex> = (0..2 * ml)
                .map(|ia| cs.vectors[(ia, x)].scale(&wl[ia % ml]))
                .collect();
            for jk in 0..4 {
                for d in 0..mr {
                    let acc = &mut half[(jk * mx + x) * mr + d];
                    for (ia, c) in cw.iter().enumerate() {
                        let (i, a) = (ia / ml, ia % ml);
                        acc.add_mul_conj(th.at(i * 4 + jk, a, d), c);
                    }
                }
            }
        }
        let mut g1 = Site::zeros(mx, my, p);
        for y in 0..my {
            let dw: Vec<MpComplex> = (0..2 * mr)
                .map(|kd| ds.vectors[(kd, y)].scale(&wr[kd % mr]))
                .collect();
            let qy = ds.values[y].clone().sqrt();
            for x in 0..mx {
                let norm = (cs.values[x].clone().sqrt() * &qy).recip();
                for j in 0..2 {
                    let mut acc = MpComplex::zero(p);
                    for (kd, c) in dw.iter().enumerate() {
                        let (k, d) = (kd / mr, kd % mr);
                        acc.add_mul_conj(&half[((j * 2 + k) * mx + x) * mr + d], c);
                    }
                    let at = g1.idx(j, x, y);
                    g1.data[at] = acc.scale(&norm);
                }
            }
        }
        self.bonds[l] = self.bond_vector(&cs.values);
        self.bonds[l + 1] = self.bond_vector(&ds.values);
        self.sites[l] = g0;
        self.sites[l + 1] = g1;
        self.sites[l + 2] = g2;
        self.note_ranks();
        Ok(())
    }
}

fn divide(z: &MpComplex, w: &MpReal) -> MpComplex {
    z.unscale(w)
        .expect("bond weights stay above the truncation floor")
}

fn store_hermitian(rho: &mut Matrix, x: usize, y: usize, mut z: MpComplex) {
    if x == y {
        z.im = Float::new(z.prec());
    } else {
        rho[(y, x)] = z.conj();
    }
    rho[(x, y)] = z;
}
