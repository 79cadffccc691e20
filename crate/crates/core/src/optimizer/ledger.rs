use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Pilot,
    RegimeTest,
    Ptr,
    Exploit,
}

/// Global shot accounting; every objective evaluation is debited here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotLedger {
    pub budget: u64,
    pub pilot: u64,
    pub regime_test: u64,
    pub ptr: u64,
    pub exploit: u64,
}

impl ShotLedger {
    pub fn new(budget: u64) -> Self {
        Self { budget, pilot: 0, regime_test: 0, ptr: 0, exploit: 0 }
    }

    pub fn debit(&mut self, phase: Phase, shots: u64) {
        let slot = match phase {
            Phase::Pilot => &mut self.pilot,
            Phase::RegimeTest => &mut self.regime_test,
            Phase::Ptr => &mut self.ptr,
            Phase::Exploit => &mut self.exploit,
        };
        *slot += shots;
    }

    pub fn spent(&self) -> u64 {
        self.pilot + self.regime_test + self.ptr + self.exploit
    }

    pub fn remaining(&self) -> u64 {
        self.budget.saturating_sub(self.spent())
    }

    pub fn exhausted(&self) -> bool {
        self.spent() >= self.budget
    }
}
