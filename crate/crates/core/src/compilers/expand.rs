//! Multi-controlled X and decrementers over {X, CX, CCX}.

use crate::circuit::PlacedOp;
use crate::error::{Error, Result};

fn ccx(a: usize, b: usize, t: usize) -> PlacedOp {
    PlacedOp::new("CCX", &[a, b, t])
}

/// Toffoli ladder with m−2 dirty ancillas; the ancillas are restored.
fn v_chain(c: &[usize], t: usize, a: &[usize]) -> Vec<PlacedOp> {
    let m = c.len();
    let mut down = Vec::new();
    for i in (3..m).rev() {
        down.push(ccx(c[i - 1], a[i - 3], a[i - 2]));
    }
    let mut up = Vec::new();
    for i in 3..m {
        up.push(ccx(c[i - 1], a[i - 3], a[i - 2]));
    }
    let mut out = Vec::new();
    for _ in 0..2 {
        out.push(ccx(c[m - 1], a[m - 3], t));
        out.extend(down.iter().cloned());
        out.push(ccx(c[0], c[1], a[0]));
        out.extend(up.iter().cloned());
    }
    out
}

/// X on `target` when every control is 1, borrowing wires from `free` in any state.
pub fn mcx(controls: &[usize], target: usize, free: &[usize]) -> Result<Vec<PlacedOp>> {
    let m = controls.len();
    match m {
        0 => return Ok(vec![PlacedOp::new("X", &[target])]),
        1 => return Ok(vec![PlacedOp::new("CX", &[controls[0], target])]),
        2 => return Ok(vec![ccx(controls[0], controls[1], target)]),
        _ => {}
    }
    if free.len() >= m - 2 {
        return Ok(v_chain(controls, target, &free[..m - 2]));
    }
    let Some((&anc, rest)) = free.split_first() else {
        return Err(Error::Unsupported(format!("{m}-controlled X needs a spare wire")));
    };
    // Split: anc ^= AND(first half); target ^= AND(second half, anc); twice each.
    let h = m.div_ceil(2);
    let (c1, c2) = controls.split_at(h);
    let mut c2a = c2.to_vec();
    c2a.push(anc);
    let mut spare1: Vec<usize> = c2.iter().copied().chain(std::iter::once(target)).chain(rest.iter().copied()).collect();
    spare1.sort_unstable();
    let mut spare2: Vec<usize> = c1.iter().copied().chain(rest.iter().copied()).collect();
    spare2.sort_unstable();
    let first = mcx(c1, anc, &spare1)?;
    let second = mcx(&c2a, target, &spare2)?;
    let mut out = Vec::new();
    for _ in 0..2 {
        out.extend(first.iter().cloned());
        out.extend(second.iter().cloned());
    }
    Ok(out)
}

/// Decrement the register `bits` (most significant first) when all `controls` are 1.
/// Wires below `qubits` that the gate does not touch serve as dirty ancillas.
pub fn expand_decrement(controls: &[usize], bits: &[usize], qubits: usize) -> Result<Vec<PlacedOp>> {
    let mut out = Vec::new();
    for j in (0..bits.len()).rev() {
        let mut cs = controls.to_vec();
        cs.extend(bits[j + 1..].iter().rev());
        let target = bits[j];
        let free: Vec<usize> = (0..qubits).filter(|w| *w != target && !cs.contains(w)).collect();
        out.extend(mcx(&cs, target, &free)?);
    }
    Ok(out)
}

/// Runs X/CX/CCX on a bit vector, wire 0 first.
pub fn classical_run(ops: &[PlacedOp], bits: &mut [bool]) -> Result<()> {
    for op in ops {
        let (t, cs) = op.wires.split_last().ok_or(Error::ShapeMismatch("empty op".into()))?;
        match (op.gate.as_str(), cs.len()) {
            ("X", 0) | ("CX", 1) | ("CCX", 2) => {
                if cs.iter().all(|&c| bits[c]) {
                    bits[*t] = !bits[*t];
                }
            }
            _ => return Err(Error::Unsupported(format!("{} is not classical", op.gate))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(x: usize, n: usize) -> Vec<bool> {
        (0..n).map(|w| (x >> (n - 1 - w)) & 1 == 1).collect()
    }

    fn check_mcx(m: usize, extra: usize) {
        let n = m + 1 + extra;
        let controls: Vec<usize> = (0..m).collect();
        let free: Vec<usize> = (m + 1..n).collect();
        let ops = mcx(&controls, m, &free).unwrap();
        for x in 0..1usize << n {
            let mut b = bits_of(x, n);
            let mut want = b.clone();
            if controls.iter().all(|&c| want[c]) {
                want[m] = !want[m];
            }
            classical_run(&ops, &mut b).unwrap();
            assert_eq!(b, want, "m={m} extra={extra} x={x:b}");
        }
    }

    #[test]
    fn multi_controlled_x() {
        for m in 0..=6 {
            check_mcx(m, m.saturating_sub(2));
        }
        for m in 3..=7 {
            check_mcx(m, 1);
        }
        assert!(mcx(&[0, 1, 2], 3, &[]).is_err());
    }

    #[test]
    fn decrement_on_every_basis_state() {
        for controls in 0..=2usize {
            for k in 1..=3usize {
                let n = controls + k + 1;
                let cs: Vec<usize> = (0..controls).collect();
                let bits: Vec<usize> = (controls..controls + k).collect();
                let ops = expand_decrement(&cs, &bits, n).unwrap();
                for x in 0..1usize << n {
                    let mut b = bits_of(x, n);
                    classical_run(&ops, &mut b).unwrap();
                    let c = x >> (k + 1);
                    let reg = (x >> 1) & ((1 << k) - 1);
                    let spare = x & 1;
                    let reg2 = if c == (1 << controls) - 1 { (reg + (1 << k) - 1) % (1 << k) } else { reg };
                    assert_eq!(b, bits_of((c << (k + 1)) | (reg2 << 1) | spare, n));
                }
            }
        }
    }
}
