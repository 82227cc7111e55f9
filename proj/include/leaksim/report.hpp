/*
 * Copyright (c) 2026 The leaksim Authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "leaksim/sim_engine.hpp"

namespace leaksim {

// Every float in these artifacts is printed with 9 significant digits so a
// re-run with the same scenario and seed is byte-identical and diffable.

// Columns: t_s,v_cap_v,i_harvest_a,i_load_a,gate,node_phase. Current columns
// are per-window means of the cap-side charge and load currents, so the
// energy audit is recomputable from this file alone.
void write_trace_csv(const std::string& path,
                     const std::vector<TracePoint>& trace);

// One object per line: {"data":{...},"kind":"...","t":...}. Kinds:
// activation, gate_open, gate_close, beacon, brownout, warning.
void write_events_jsonl(const std::string& path,
                        const std::vector<Event>& events);

// Human-readable summary plus a reproduction table of run-derived metrics
// against bench reference values, with a PASS/FAIL flag per row. Every flag
// is recomputable from trace.csv and events.jsonl.
std::string render_report(const SimResult& result);
void write_report_txt(const std::string& path, const SimResult& result);

// Machine-readable mirror of RunSummary for downstream tooling.
void write_summary_json(const std::string& path, const SimResult& result);

// Combined overlay CSV for a sweep: a shared t_s column plus one v_cap_v
// column per swept value.
void write_sweep_overlay_csv(const std::string& path, SweepParam param,
                             const std::vector<SweepPoint>& points);

// Per-run rows and aggregate statistics for a Monte Carlo batch.
void write_mc_runs_csv(const std::string& path, const MonteCarloResult& mc);
void write_mc_stats_json(const std::string& path, const MonteCarloResult& mc);

}  // namespace leaksim
