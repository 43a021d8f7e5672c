//! BP2 and BP4 syndrome decoders with configurable LLR initialization.
//!
//! Both decoders run a flooding schedule: one check-to-variable sweep, one
//! variable-to-check sweep, a hard decision, and a syndrome test per
//! iteration. The syndrome test also runs on the initial hard decision
//! before the first iteration, so a zero syndrome returns instantly. The
//! check update is the syndrome-signed tanh rule; it is shared verbatim
//! between the binary and quaternary graphs because it never looks at the
//! check matrix entries.
//!
//! BP2 projects the check matrix onto its two binary systems and decodes
//! them as independent binary codes: pure X-type rows constrain the Z/Y
//! error components, pure Z-type rows the X/Y components, and the estimate
//! is reassembled from the two bit planes. Codes with mixed rows are
//! rejected for BP2.
//!
//! BP4 passes one scalar message per Tanner edge. Each message carries the
//! belief that the error on its variable commutes with the edge's check
//! matrix entry. A-posteriori values for the X, Y, Z hypotheses gather the
//! messages whose entries anticommute with the hypothesis; positive values
//! favor identity, so the hard decision picks identity when all three are
//! positive and the minimizing hypothesis otherwise. Two variable-update
//! scalarizations are provided: `TraceWeighted` (default) feeds an edge only
//! from messages about the same commutation question (entries equal to the
//! edge's own), `Plain` sums every incoming message regardless of entry.
//!
//! All messages and posteriors are clipped to [`MESSAGE_CLIP`], and the tanh
//! product is evaluated in the log-magnitude/sign domain so saturated
//! messages cannot overflow the atanh.

use crate::code::StabilizerCode;
use crate::math;
use crate::pauli::{Pauli, PauliVector, Syndrome};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Symmetric clip bound applied to every LLR message and posterior.
pub const MESSAGE_CLIP: f64 = 30.0;

/// Decoder family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderFamily {
    Bp2,
    Bp4,
}

impl fmt::Display for DecoderFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderFamily::Bp2 => write!(f, "bp2"),
            DecoderFamily::Bp4 => write!(f, "bp4"),
        }
    }
}

/// Variable-update rule of the BP4 scalar decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scalarization {
    /// Sum every incoming check message on the variable (the literal
    /// all-inclusive aggregation).
    Plain,
    /// Gate incoming messages by the trace inner product of entries: an edge
    /// only aggregates messages that answer the same commutation question,
    /// i.e. whose entries commute with (equal) its own entry.
    #[default]
    TraceWeighted,
}

impl fmt::Display for Scalarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalarization::Plain => write!(f, "plain"),
            Scalarization::TraceWeighted => write!(f, "trace-weighted"),
        }
    }
}

/// Assumed-probability domain error for the LLR maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlrDomainError {
    pub assumed_epsilon: f64,
}

impl fmt::Display for LlrDomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "assumed depolarizing probability {} is outside (0, 1)",
            self.assumed_epsilon
        )
    }
}

/// Initial LLR of the binary decoder: ln((1 - 2*eps0/3) / (2*eps0/3)).
pub fn llr_bp2(eps0: f64) -> Result<f64, LlrDomainError> {
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(LlrDomainError {
            assumed_epsilon: eps0,
        });
    }
    let q = 2.0 * eps0 / 3.0;
    Ok(math::ln((1.0 - q) / q))
}

/// Initial LLR of the quaternary decoder: ln((1 - eps0) / (eps0/3)),
/// identical for the X, Y and Z hypotheses.
pub fn llr_bp4(eps0: f64) -> Result<f64, LlrDomainError> {
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(LlrDomainError {
            assumed_epsilon: eps0,
        });
    }
    Ok(math::ln((1.0 - eps0) / (eps0 / 3.0)))
}

/// Family-dispatched forward LLR map.
pub fn initial_llr(family: DecoderFamily, eps0: f64) -> Result<f64, LlrDomainError> {
    match family {
        DecoderFamily::Bp2 => llr_bp2(eps0),
        DecoderFamily::Bp4 => llr_bp4(eps0),
    }
}

/// Exact inverse of the forward LLR maps; defined for every real input.
///
/// BP2: eps0 = 3 / (2 (1 + e^L)). BP4: eps0 = 3 / (3 + e^L).
pub fn eps_from_llr(family: DecoderFamily, l0: f64) -> f64 {
    match family {
        DecoderFamily::Bp2 => 3.0 / (2.0 * (1.0 + math::exp(l0))),
        DecoderFamily::Bp4 => 3.0 / (3.0 + math::exp(l0)),
    }
}

/// Decoder configuration: family, iteration cap, initialization, and the
/// BP4 scalarization mode.
///
/// The assumed probability and the initial LLR are always consistent under
/// the family's bijection; both constructors derive one from the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    family: DecoderFamily,
    max_iterations: usize,
    assumed_epsilon: f64,
    initial_llr: f64,
    scalarization: Scalarization,
}

impl DecoderConfig {
    pub fn from_assumed_epsilon(
        family: DecoderFamily,
        eps0: f64,
        max_iterations: usize,
    ) -> Result<Self, LlrDomainError> {
        let initial_llr = initial_llr(family, eps0)?;
        Ok(Self {
            family,
            max_iterations,
            assumed_epsilon: eps0,
            initial_llr,
            scalarization: Scalarization::default(),
        })
    }

    pub fn from_initial_llr(
        family: DecoderFamily,
        l0: f64,
        max_iterations: usize,
    ) -> Result<Self, LlrDomainError> {
        let eps0 = eps_from_llr(family, l0);
        if !(eps0 > 0.0 && eps0 < 1.0) {
            return Err(LlrDomainError {
                assumed_epsilon: eps0,
            });
        }
        Ok(Self {
            family,
            max_iterations,
            assumed_epsilon: eps0,
            initial_llr: l0,
            scalarization: Scalarization::default(),
        })
    }

    pub fn with_scalarization(mut self, scalarization: Scalarization) -> Self {
        self.scalarization = scalarization;
        self
    }

    #[inline]
    pub fn family(&self) -> DecoderFamily {
        self.family
    }

    #[inline]
    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    #[inline]
    pub fn assumed_epsilon(&self) -> f64 {
        self.assumed_epsilon
    }

    #[inline]
    pub fn initial_llr(&self) -> f64 {
        self.initial_llr
    }

    #[inline]
    pub fn scalarization(&self) -> Scalarization {
        self.scalarization
    }
}

/// Outcome of one decode attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// The estimated error pattern.
    pub estimate: PauliVector,
    /// True iff the estimate reproduces the input syndrome exactly.
    pub converged: bool,
    /// Iterations consumed; 0 means the initial hard decision already
    /// satisfied the syndrome.
    pub iterations_used: usize,
}

/// Decode-time failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeError {
    /// BP2 requires every row to be pure X-type or pure Z-type.
    MixedRow { row: usize },
    /// Syndrome length does not match the check count.
    SyndromeLength { got: usize, expected: usize },
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::MixedRow { row } => write!(
                f,
                "BP2 unavailable: row {row} is neither pure X-type nor pure Z-type"
            ),
            DecodeError::SyndromeLength { got, expected } => {
                write!(f, "syndrome has {got} bits, code has {expected} checks")
            }
        }
    }
}

#[inline]
fn clip(x: f64) -> f64 {
    x.clamp(-MESSAGE_CLIP, MESSAGE_CLIP)
}

/// Syndrome-signed tanh check update.
///
/// Returns (-1)^s * 2 atanh(prod tanh(L_k / 2)) over the incoming messages,
/// evaluated in the log-magnitude/sign domain. A single incoming message
/// passes through exactly (with the syndrome sign); an empty product
/// saturates at the clip bound.
pub fn check_update(incoming: &[f64], syndrome_bit: bool) -> f64 {
    let sign_s = if syndrome_bit { -1.0 } else { 1.0 };
    match incoming {
        [] => sign_s * MESSAGE_CLIP,
        [only] => sign_s * clip(*only),
        _ => {
            let mut negative = false;
            let mut log_mag = 0.0f64;
            for &raw in incoming {
                let m = clip(raw);
                if m == 0.0 {
                    return 0.0;
                }
                if m < 0.0 {
                    negative = !negative;
                }
                log_mag += math::ln(math::tanh(0.5 * if m < 0.0 { -m } else { m }));
            }
            let t = math::exp(log_mag);
            let mag = if t >= 1.0 {
                MESSAGE_CLIP
            } else {
                (2.0 * math::atanh(t)).min(MESSAGE_CLIP)
            };
            sign_s * if negative { -mag } else { mag }
        }
    }
}

/// Variable update: channel LLR plus the incoming check messages, clipped.
pub fn variable_update(l_ch: f64, incoming: &[f64]) -> f64 {
    clip(l_ch + incoming.iter().sum::<f64>())
}

/// Coset-level success verdict used for FER counting: the decode must have
/// converged and the residual must lie in the stabilizer group. A
/// non-converged frame counts as a failure even if its residual happens to
/// be a stabilizer element.
pub fn decode_success(code: &StabilizerCode, e_true: &PauliVector, result: &DecodeResult) -> bool {
    result.converged && residual_in_stabilizer(code, e_true, result)
}

/// The bare coset test: is estimate + true error a stabilizer element?
pub fn residual_in_stabilizer(
    code: &StabilizerCode,
    e_true: &PauliVector,
    result: &DecodeResult,
) -> bool {
    let residual = result
        .estimate
        .add(e_true)
        .expect("estimate and true error must have equal length");
    code.is_stabilizer_element(&residual)
}

// ---------------------------------------------------------------------------
// Shared Tanner-graph plumbing
// ---------------------------------------------------------------------------

/// Edge-indexed Tanner graph in CSR form. Edges are enumerated variable-major
/// so the variable sweep is contiguous; `check_edge` regroups them per check.
#[derive(Debug, Clone)]
struct TannerCsr {
    n_vars: usize,
    var_start: Vec<u32>,
    edge_var: Vec<u32>,
    check_start: Vec<u32>,
    check_edge: Vec<u32>,
}

impl TannerCsr {
    fn new(
        n_vars: usize,
        n_checks: usize,
        adjacency: impl Iterator<Item = (usize, usize)>,
    ) -> Self {
        // adjacency yields (var, check) pairs in variable-major order.
        let mut var_start = vec![0u32; n_vars + 1];
        let mut edge_var = Vec::new();
        let mut edge_check_tmp = Vec::new();
        for (var, check) in adjacency {
            debug_assert!(var < n_vars && check < n_checks);
            var_start[var + 1] += 1;
            edge_var.push(var as u32);
            edge_check_tmp.push(check as u32);
        }
        for v in 0..n_vars {
            var_start[v + 1] += var_start[v];
        }
        let n_edges = edge_var.len();
        let mut check_start = vec![0u32; n_checks + 1];
        for &c in &edge_check_tmp {
            check_start[c as usize + 1] += 1;
        }
        for c in 0..n_checks {
            check_start[c + 1] += check_start[c];
        }
        let mut cursor: Vec<u32> = check_start[..n_checks].to_vec();
        let mut check_edge = vec![0u32; n_edges];
        for (edge, &c) in edge_check_tmp.iter().enumerate() {
            check_edge[cursor[c as usize] as usize] = edge as u32;
            cursor[c as usize] += 1;
        }
        Self {
            n_vars,
            var_start,
            edge_var,
            check_start,
            check_edge,
        }
    }

    #[inline]
    fn n_edges(&self) -> usize {
        self.edge_var.len()
    }

    #[inline]
    fn n_checks(&self) -> usize {
        self.check_start.len() - 1
    }

    #[inline]
    fn var_edges(&self, var: usize) -> core::ops::Range<usize> {
        self.var_start[var] as usize..self.var_start[var + 1] as usize
    }

    #[inline]
    fn check_edges(&self, check: usize) -> &[u32] {
        &self.check_edge[self.check_start[check] as usize..self.check_start[check + 1] as usize]
    }
}

/// One check-to-variable flooding sweep over a CSR graph.
///
/// `syndrome_bit(c)` supplies the sign of check c. `log_mag` is per-edge
/// scratch. Degree-1 checks emit the clip bound (an empty exclusion product),
/// degree-2 checks pass the opposite message through exactly.
fn c2v_sweep(
    csr: &TannerCsr,
    syndrome_bit: impl Fn(usize) -> bool,
    v2c: &[f64],
    c2v: &mut [f64],
    log_mag: &mut [f64],
) {
    for check in 0..csr.n_checks() {
        let edges = csr.check_edges(check);
        let sign_s = if syndrome_bit(check) { -1.0 } else { 1.0 };
        match edges {
            [] => {}
            [e] => c2v[*e as usize] = sign_s * MESSAGE_CLIP,
            [e0, e1] => {
                c2v[*e0 as usize] = sign_s * v2c[*e1 as usize];
                c2v[*e1 as usize] = sign_s * v2c[*e0 as usize];
            }
            _ => {
                let mut zero_count = 0usize;
                let mut zero_edge = usize::MAX;
                let mut negatives = 0usize;
                let mut total_log_mag = 0.0f64;
                for &e in edges {
                    let m = v2c[e as usize];
                    if m == 0.0 {
                        zero_count += 1;
                        zero_edge = e as usize;
                        log_mag[e as usize] = 0.0;
                        continue;
                    }
                    if m < 0.0 {
                        negatives += 1;
                    }
                    let lm = math::ln(math::tanh(0.5 * if m < 0.0 { -m } else { m }));
                    log_mag[e as usize] = lm;
                    total_log_mag += lm;
                }
                for &e in edges {
                    let e = e as usize;
                    let out = if zero_count >= 2 || (zero_count == 1 && e != zero_edge) {
                        0.0
                    } else {
                        // Exclude this edge's own contribution.
                        let own_zero = zero_count == 1; // then e == zero_edge
                        let excl_negatives = negatives - usize::from(!own_zero && v2c[e] < 0.0);
                        let excl_log_mag = if own_zero {
                            total_log_mag
                        } else {
                            total_log_mag - log_mag[e]
                        };
                        let t = math::exp(excl_log_mag);
                        let mag = if t >= 1.0 {
                            MESSAGE_CLIP
                        } else {
                            (2.0 * math::atanh(t)).min(MESSAGE_CLIP)
                        };
                        if excl_negatives % 2 == 1 {
                            -mag
                        } else {
                            mag
                        }
                    };
                    c2v[e] = sign_s * out;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// BP2
// ---------------------------------------------------------------------------

/// One of the two projected binary systems: a set of pure-type rows
/// constraining one bit plane of the error.
#[derive(Debug, Clone)]
struct BinarySystem {
    /// Code row index of each local check, for slicing the input syndrome.
    code_rows: Vec<usize>,
    csr: TannerCsr,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    log_mag: Vec<f64>,
    bits: Vec<bool>,
}

impl BinarySystem {
    fn new(n_vars: usize, rows: Vec<(usize, Vec<usize>)>) -> Self {
        let code_rows: Vec<usize> = rows.iter().map(|(i, _)| *i).collect();
        // Variable-major edge enumeration.
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n_vars];
        for (local, (_, support)) in rows.iter().enumerate() {
            for &j in support {
                incidence[j].push(local);
            }
        }
        let csr = TannerCsr::new(
            n_vars,
            rows.len(),
            incidence
                .iter()
                .enumerate()
                .flat_map(|(j, checks)| checks.iter().map(move |&c| (j, c))),
        );
        let n_edges = csr.n_edges();
        Self {
            code_rows,
            csr,
            v2c: vec![0.0; n_edges],
            c2v: vec![0.0; n_edges],
            log_mag: vec![0.0; n_edges],
            bits: vec![false; n_vars],
        }
    }

    /// Run to the system's own stopping point. Returns (converged, iterations).
    fn run(&mut self, syndrome: &Syndrome, l_ch: f64, max_iterations: usize) -> (bool, usize) {
        let n = self.csr.n_vars;
        for m in self.v2c.iter_mut() {
            *m = l_ch;
        }
        for m in self.c2v.iter_mut() {
            *m = 0.0;
        }
        // Initial hard decision from the channel LLR alone.
        let initial_bit = l_ch < 0.0;
        for b in self.bits.iter_mut() {
            *b = initial_bit;
        }
        if self.syndrome_satisfied(syndrome) {
            return (true, 0);
        }
        for iteration in 1..=max_iterations {
            let s_bit = |local: usize| syndrome.get(self.code_rows[local]);
            c2v_sweep(
                &self.csr,
                s_bit,
                &self.v2c,
                &mut self.c2v,
                &mut self.log_mag,
            );
            for var in 0..n {
                let range = self.csr.var_edges(var);
                let mut total = l_ch;
                for e in range.clone() {
                    total += self.c2v[e];
                }
                self.bits[var] = total < 0.0;
                for e in range {
                    self.v2c[e] = clip(total - self.c2v[e]);
                }
            }
            if self.syndrome_satisfied(syndrome) {
                return (true, iteration);
            }
        }
        (false, max_iterations)
    }

    fn syndrome_satisfied(&self, syndrome: &Syndrome) -> bool {
        for (local, &code_row) in self.code_rows.iter().enumerate() {
            let mut parity = false;
            for &e in self.csr.check_edges(local) {
                parity ^= self.bits[self.csr.edge_var[e as usize] as usize];
            }
            if parity != syndrome.get(code_row) {
                return false;
            }
        }
        true
    }
}

/// BP2 decoder: two independent binary syndrome decoders over the pure-type
/// row projections, reusable across decodes.
#[derive(Debug, Clone)]
pub struct Bp2Decoder<'c> {
    code: &'c StabilizerCode,
    /// Solves for the z bit plane (Z/Y components) from the X-type rows.
    z_system: BinarySystem,
    /// Solves for the x bit plane (X/Y components) from the Z-type rows.
    x_system: BinarySystem,
    l_ch: f64,
    max_iterations: usize,
}

impl<'c> Bp2Decoder<'c> {
    pub fn new(code: &'c StabilizerCode, config: &DecoderConfig) -> Result<Self, DecodeError> {
        debug_assert_eq!(config.family(), DecoderFamily::Bp2);
        let n = code.n();
        let mut z_rows = Vec::new();
        let mut x_rows = Vec::new();
        for (i, row) in code.rows().iter().enumerate() {
            let mut has_x = false;
            let mut has_zy = false;
            let mut support = Vec::new();
            for j in 0..n {
                match row.get(j) {
                    Pauli::I => {}
                    Pauli::X => {
                        has_x = true;
                        support.push(j);
                    }
                    Pauli::Z => {
                        has_zy = true;
                        support.push(j);
                    }
                    Pauli::Y => {
                        // A Y entry makes both projections nonzero.
                        has_x = true;
                        has_zy = true;
                        support.push(j);
                    }
                }
            }
            match (has_x, has_zy) {
                // Pure X row: nonzero projection indicates X/Y symbols, and
                // its syndrome bit counts the Z/Y components of the error.
                (true, false) => z_rows.push((i, support)),
                (false, true) => x_rows.push((i, support)),
                _ => return Err(DecodeError::MixedRow { row: i }),
            }
        }
        let l_ch = config.initial_llr();
        Ok(Self {
            code,
            z_system: BinarySystem::new(n, z_rows),
            x_system: BinarySystem::new(n, x_rows),
            l_ch,
            max_iterations: config.max_iterations(),
        })
    }

    pub fn decode(&mut self, syndrome: &Syndrome) -> Result<DecodeResult, DecodeError> {
        if syndrome.len() != self.code.m() {
            return Err(DecodeError::SyndromeLength {
                got: syndrome.len(),
                expected: self.code.m(),
            });
        }
        let (z_ok, z_iters) = self.z_system.run(syndrome, self.l_ch, self.max_iterations);
        let (x_ok, x_iters) = self.x_system.run(syndrome, self.l_ch, self.max_iterations);
        let n = self.code.n();
        let mut estimate = PauliVector::identity(n);
        for j in 0..n {
            let p = Pauli::from_bits(self.x_system.bits[j], self.z_system.bits[j]);
            if p != Pauli::I {
                estimate.set(j, p);
            }
        }
        Ok(DecodeResult {
            estimate,
            converged: z_ok && x_ok,
            iterations_used: z_iters.max(x_iters),
        })
    }
}

// ---------------------------------------------------------------------------
// BP4
// ---------------------------------------------------------------------------

/// BP4 scalar-message decoder on the quaternary Tanner graph, reusable
/// across decodes.
#[derive(Debug, Clone)]
pub struct Bp4Decoder<'c> {
    code: &'c StabilizerCode,
    csr: TannerCsr,
    /// Entry index per edge: 0 = X, 1 = Y, 2 = Z.
    edge_entry: Vec<u8>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    log_mag: Vec<f64>,
    hard: Vec<Pauli>,
    l_ch: f64,
    max_iterations: usize,
    scalarization: Scalarization,
}

const ENTRY_PAULIS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

#[inline]
fn entry_index(p: Pauli) -> u8 {
    match p {
        Pauli::X => 0,
        Pauli::Y => 1,
        Pauli::Z => 2,
        Pauli::I => unreachable!("Tanner edges exist only on non-identity entries"),
    }
}

impl<'c> Bp4Decoder<'c> {
    pub fn new(code: &'c StabilizerCode, config: &DecoderConfig) -> Self {
        debug_assert_eq!(config.family(), DecoderFamily::Bp4);
        let n = code.n();
        let csr = TannerCsr::new(
            n,
            code.m(),
            (0..n).flat_map(|j| code.var_support(j).iter().map(move |&i| (j, i))),
        );
        let mut edge_entry = Vec::with_capacity(csr.n_edges());
        for j in 0..n {
            for &i in code.var_support(j) {
                edge_entry.push(entry_index(code.entry(i, j)));
            }
        }
        let n_edges = csr.n_edges();
        Self {
            code,
            csr,
            edge_entry,
            v2c: vec![0.0; n_edges],
            c2v: vec![0.0; n_edges],
            log_mag: vec![0.0; n_edges],
            hard: vec![Pauli::I; n],
            l_ch: config.initial_llr(),
            max_iterations: config.max_iterations(),
            scalarization: config.scalarization(),
        }
    }

    pub fn decode(&mut self, syndrome: &Syndrome) -> Result<DecodeResult, DecodeError> {
        if syndrome.len() != self.code.m() {
            return Err(DecodeError::SyndromeLength {
                got: syndrome.len(),
                expected: self.code.m(),
            });
        }
        let n = self.code.n();
        for m in self.v2c.iter_mut() {
            *m = self.l_ch;
        }
        for m in self.c2v.iter_mut() {
            *m = 0.0;
        }
        // Initial hard decision: all a-posteriori values equal the channel
        // LLR, so every qubit picks I when it is positive and ties to X
        // otherwise.
        let initial = if self.l_ch > 0.0 { Pauli::I } else { Pauli::X };
        for h in self.hard.iter_mut() {
            *h = initial;
        }
        if self.syndrome_satisfied(syndrome) {
            return Ok(self.result(true, 0));
        }
        for iteration in 1..=self.max_iterations {
            c2v_sweep(
                &self.csr,
                |c| syndrome.get(c),
                &self.v2c,
                &mut self.c2v,
                &mut self.log_mag,
            );
            for var in 0..n {
                let range = self.csr.var_edges(var);
                let mut by_entry = [0.0f64; 3];
                let mut total = 0.0f64;
                for e in range.clone() {
                    let m = self.c2v[e];
                    by_entry[self.edge_entry[e] as usize] += m;
                    total += m;
                }
                // A-posteriori value of hypothesis W: messages from entries
                // anticommuting with W, i.e. every entry other than W itself.
                let lambda = [
                    clip(self.l_ch + total - by_entry[0]),
                    clip(self.l_ch + total - by_entry[1]),
                    clip(self.l_ch + total - by_entry[2]),
                ];
                self.hard[var] = hard_decision(lambda);
                for e in range {
                    let own = self.c2v[e];
                    let gathered = match self.scalarization {
                        Scalarization::Plain => total,
                        Scalarization::TraceWeighted => by_entry[self.edge_entry[e] as usize],
                    };
                    self.v2c[e] = clip(self.l_ch + gathered - own);
                }
            }
            if self.syndrome_satisfied(syndrome) {
                return Ok(self.result(true, iteration));
            }
        }
        Ok(self.result(false, self.max_iterations))
    }

    fn syndrome_satisfied(&self, syndrome: &Syndrome) -> bool {
        for check in 0..self.code.m() {
            let mut parity = 0u8;
            for &e in self.csr.check_edges(check) {
                let var = self.csr.edge_var[e as usize] as usize;
                let entry = ENTRY_PAULIS[self.edge_entry[e as usize] as usize];
                parity ^= entry.trace_inner_product(self.hard[var]);
            }
            if (parity == 1) != syndrome.get(check) {
                return false;
            }
        }
        true
    }

    fn result(&self, converged: bool, iterations_used: usize) -> DecodeResult {
        let mut estimate = PauliVector::identity(self.code.n());
        for (j, &p) in self.hard.iter().enumerate() {
            if p != Pauli::I {
                estimate.set(j, p);
            }
        }
        DecodeResult {
            estimate,
            converged,
            iterations_used,
        }
    }
}

/// Hard decision from the three a-posteriori values (X, Y, Z order):
/// identity if all are positive, otherwise the minimizing hypothesis, ties
/// resolved in X < Y < Z order.
#[inline]
fn hard_decision(lambda: [f64; 3]) -> Pauli {
    if lambda[0] > 0.0 && lambda[1] > 0.0 && lambda[2] > 0.0 {
        return Pauli::I;
    }
    let mut best = 0usize;
    if lambda[1] < lambda[best] {
        best = 1;
    }
    if lambda[2] < lambda[best] {
        best = 2;
    }
    ENTRY_PAULIS[best]
}

// ---------------------------------------------------------------------------
// Family dispatch
// ---------------------------------------------------------------------------

/// A ready-to-run decoder of either family, owning its message buffers.
/// Instances are independent; one per worker thread.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // built once per worker, never copied
pub enum DecoderInstance<'c> {
    Bp2(Bp2Decoder<'c>),
    Bp4(Bp4Decoder<'c>),
}

impl<'c> DecoderInstance<'c> {
    pub fn new(code: &'c StabilizerCode, config: &DecoderConfig) -> Result<Self, DecodeError> {
        match config.family() {
            DecoderFamily::Bp2 => Ok(DecoderInstance::Bp2(Bp2Decoder::new(code, config)?)),
            DecoderFamily::Bp4 => Ok(DecoderInstance::Bp4(Bp4Decoder::new(code, config))),
        }
    }

    pub fn decode(&mut self, syndrome: &Syndrome) -> Result<DecodeResult, DecodeError> {
        match self {
            DecoderInstance::Bp2(d) => d.decode(syndrome),
            DecoderInstance::Bp4(d) => d.decode(syndrome),
        }
    }
}

/// One-shot BP2 decode; builds a fresh decoder instance.
pub fn bp2_decode(
    code: &StabilizerCode,
    syndrome: &Syndrome,
    config: &DecoderConfig,
) -> Result<DecodeResult, DecodeError> {
    Bp2Decoder::new(code, config)?.decode(syndrome)
}

/// One-shot BP4 decode; builds a fresh decoder instance.
pub fn bp4_decode(
    code: &StabilizerCode,
    syndrome: &Syndrome,
    config: &DecoderConfig,
) -> Result<DecodeResult, DecodeError> {
    Bp4Decoder::new(code, config).decode(syndrome)
}
