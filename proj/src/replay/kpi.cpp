// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/kpi.hpp"

#include "fnkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace fnkit {

using nlohmann::json;

Stats compute_stats(std::vector<double> samples) {
    Stats s;
    s.count = samples.size();
    if (samples.empty()) return s;
    std::sort(samples.begin(), samples.end());
    s.median = samples[(samples.size() - 1) / 2];
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(samples.size())));
    s.p95 = samples[std::max<std::size_t>(rank, 1) - 1];
    s.max = samples.back();
    return s;
}

namespace {

struct OpenTick {
    std::optional<std::int64_t> in_begin, in_end, step_begin, step_end, out_begin;
    bool failed = false;
};

[[noreturn]] void unbalanced(const TraceRecord& r, std::size_t index, const std::string& why) {
    throw Error(ErrorKind::kUnbalancedTrace,
                "record " + std::to_string(index + 1) + " (" + r.kind + ", node " + r.node + "): " + why);
}

}  // namespace

std::vector<TickTiming> tick_timings(const RunTrace& trace) {
    std::vector<TickTiming> out;
    std::map<std::string, OpenTick> open;
    const auto& records = trace.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const bool failed = r.payload.is_object() && r.payload.value("failed", false);
        auto it = open.find(r.node);
        OpenTick* o = it == open.end() ? nullptr : &it->second;
        if (r.kind == "adapter_in_begin") {
            if (o != nullptr) unbalanced(r, i, "tick already open");
            open[r.node].in_begin = r.t_us;
        } else if (r.kind == "adapter_in_end") {
            if (o == nullptr || !o->in_begin || o->in_end) unbalanced(r, i, "no open adapter-in phase");
            o->in_end = r.t_us;
            o->failed = o->failed || failed;
        } else if (r.kind == "step_begin") {
            if (o == nullptr) {
                open[r.node].step_begin = r.t_us;  // direct call without adapter phases
            } else {
                if (o->step_begin || (o->in_begin && !o->in_end)) unbalanced(r, i, "step begins out of order");
                o->step_begin = r.t_us;
            }
        } else if (r.kind == "step_end") {
            if (o == nullptr || !o->step_begin || o->step_end) unbalanced(r, i, "no open step");
            o->step_end = r.t_us;
            o->failed = o->failed || failed;
            if (!o->in_begin) {
                if (!o->failed) {
                    const std::int64_t logic = r.t_us - *o->step_begin;
                    out.push_back(TickTiming{r.node, *o->step_begin, logic, 0, logic});
                }
                open.erase(r.node);
            }
        } else if (r.kind == "adapter_out_begin") {
            if (o == nullptr || !o->step_end || o->out_begin) unbalanced(r, i, "adapter-out begins out of order");
            o->out_begin = r.t_us;
        } else if (r.kind == "adapter_out_end") {
            if (o == nullptr || !o->out_begin) unbalanced(r, i, "no open adapter-out phase");
            if (!failed && !o->failed) {
                TickTiming t;
                t.node = r.node;
                t.t_us = *o->in_begin;
                t.exec_us = r.t_us - *o->in_begin;
                t.adapter_us = (*o->in_end - *o->in_begin) + (r.t_us - *o->out_begin);
                t.logic_us = *o->step_end - *o->step_begin;
                out.push_back(t);
            }
            open.erase(r.node);
        } else if (r.kind == "transition" && o != nullptr) {
            if (!o->failed) unbalanced(r, i, "transition inside an open tick");
            open.erase(r.node);
        }
    }
    for (const auto& [node, o] : open) {
        if (!o.failed) {
            throw Error(ErrorKind::kUnbalancedTrace, "node " + node + ": tick left open at end of trace");
        }
    }
    return out;
}

KpiReport measure(const RunTrace& trace, const std::map<std::string, double>& cycle_time_ms) {
    std::map<std::string, std::vector<const TickTiming*>> by_node;
    const auto timings = tick_timings(trace);
    for (const auto& t : timings) by_node[t.node].push_back(&t);
    KpiReport report;
    for (const auto& [node, ticks] : by_node) {
        std::vector<double> exec, adapter, logic;
        for (const auto* t : ticks) {
            exec.push_back(static_cast<double>(t->exec_us));
            adapter.push_back(static_cast<double>(t->adapter_us));
            logic.push_back(static_cast<double>(t->logic_us));
        }
        NodeKpi k;
        k.node = node;
        k.t_exec = compute_stats(exec);
        k.t_adapter = compute_stats(adapter);
        k.t_logic = compute_stats(logic);
        auto cycle = cycle_time_ms.find(node);
        if (cycle != cycle_time_ms.end()) {
            k.cycle_time_ms = cycle->second;
            const double limit = cycle->second * 1000.0;
            std::size_t within = 0;
            for (double e : exec) within += e < limit ? 1 : 0;
            k.within_cycle = exec.empty() ? 1.0 : static_cast<double>(within) / static_cast<double>(exec.size());
        }
        report.nodes.push_back(std::move(k));
    }
    return report;
}

bool EquivalenceReport::equivalent() const {
    return std::all_of(events.begin(), events.end(), [](const EventComparison& e) { return !e.first_divergence; });
}

EquivalenceReport compare_behavior(const RunTrace& a, const RunTrace& b, const std::vector<std::string>& events) {
    struct Sample {
        std::int64_t t_us;
        const json* value;
    };
    auto collect = [](const RunTrace& trace, const std::string& event) {
        std::vector<Sample> out;
        for (const auto& r : trace.records()) {
            if (r.kind != "publish" || r.node == "replay") continue;
            if (r.payload.value("path", "") == event) out.push_back(Sample{r.t_us, &r.payload.at("value")});
        }
        return out;
    };
    EquivalenceReport report;
    for (const auto& event : events) {
        const auto sa = collect(a, event);
        const auto sb = collect(b, event);
        if (sa.empty()) throw Error(ErrorKind::kUnknownEvent, "event " + event + " absent from the first trace");
        if (sb.empty()) throw Error(ErrorKind::kUnknownEvent, "event " + event + " absent from the second trace");
        EventComparison c;
        c.event = event;
        c.count_a = sa.size();
        c.count_b = sb.size();
        const std::size_t n = std::max(sa.size(), sb.size());
        for (std::size_t i = 0; i < n; ++i) {
            const bool has_a = i < sa.size();
            const bool has_b = i < sb.size();
            if (has_a && has_b && sa[i].value->dump() == sb[i].value->dump()) {
                ++c.matches;
                continue;
            }
            if (!c.first_divergence) {
                EventComparison::Divergence d;
                d.index = i;
                if (has_a) {
                    d.t_a_us = sa[i].t_us;
                    d.expected = *sa[i].value;
                }
                if (has_b) {
                    d.t_b_us = sb[i].t_us;
                    d.actual = *sb[i].value;
                }
                c.first_divergence = d;
            }
        }
        report.events.push_back(std::move(c));
    }
    return report;
}

json to_json(const Stats& s) {
    return {{"median_us", s.median}, {"p95_us", s.p95}, {"max_us", s.max}, {"count", s.count}};
}

json to_json(const EquivalenceReport& report) {
    json events = json::array();
    for (const auto& e : report.events) {
        json j = {{"event", e.event}, {"count_a", e.count_a}, {"count_b", e.count_b}, {"matches", e.matches}};
        if (e.first_divergence) {
            const auto& d = *e.first_divergence;
            json div = {{"index", d.index}, {"expected", d.expected}, {"actual", d.actual}};
            div["t_a_us"] = d.t_a_us ? json(*d.t_a_us) : json(nullptr);
            div["t_b_us"] = d.t_b_us ? json(*d.t_b_us) : json(nullptr);
            j["first_divergence"] = div;
        } else {
            j["first_divergence"] = nullptr;
        }
        events.push_back(j);
    }
    return {{"equivalent", report.equivalent()}, {"events", events}};
}

json to_json(const KpiReport& report) {
    json nodes = json::array();
    for (const auto& n : report.nodes) {
        json j = {{"node", n.node},
                  {"t_exec", to_json(n.t_exec)},
                  {"t_adapter", to_json(n.t_adapter)},
                  {"t_logic", to_json(n.t_logic)}};
        if (n.cycle_time_ms) j["cycle_time_ms"] = *n.cycle_time_ms;
        if (n.within_cycle) j["within_cycle"] = *n.within_cycle;
        nodes.push_back(j);
    }
    json j = {{"nodes", nodes}};
    if (report.equivalence) j["equivalence"] = to_json(*report.equivalence);
    if (!report.artifacts.empty()) {
        json artifacts = json::array();
        for (const auto& a : report.artifacts) {
            artifacts.push_back({{"component", a.component},
                                 {"generated_loc", a.generated_loc},
                                 {"manual_loc", a.manual_loc},
                                 {"fraction_generated", a.fraction_generated}});
        }
        j["artifacts"] = artifacts;
    }
    if (report.config_time_ms) j["config_time_ms"] = *report.config_time_ms;
    return j;
}

namespace {

std::string format(const char* fmt, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, a);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string to_text(const EquivalenceReport& report) {
    std::string out;
    for (const auto& e : report.events) {
        out += pad(e.event, 44) + " " + std::to_string(e.matches) + "/" + std::to_string(e.count_a) + " match";
        if (e.first_divergence) {
            const auto& d = *e.first_divergence;
            out += ", first divergence at #" + std::to_string(d.index);
            if (d.t_a_us) out += " (t=" + std::to_string(*d.t_a_us) + " us)";
            out += ": expected " + d.expected.dump() + ", actual " + d.actual.dump();
        }
        out += '\n';
    }
    out += std::string("equivalence: ") + (report.equivalent() ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string to_text(const KpiReport& report) {
    std::string out = pad("node", 16) + pad("ticks", 8) + pad("exec med/p95/max us", 26) +
                      pad("adapter med/p95/max us", 26) + pad("logic med/p95/max us", 26) + "in-cycle\n";
    auto triple = [](const Stats& s) {
        return format("%.0f", s.median) + "/" + format("%.0f", s.p95) + "/" + format("%.0f", s.max);
    };
    for (const auto& n : report.nodes) {
        out += pad(n.node, 16) + pad(std::to_string(n.t_exec.count), 8) + pad(triple(n.t_exec), 26) +
               pad(triple(n.t_adapter), 26) + pad(triple(n.t_logic), 26) +
               (n.within_cycle ? format("%.2f%%", *n.within_cycle * 100.0) : std::string("-")) + "\n";
    }
    for (const auto& a : report.artifacts) {
        out += "artifact " + a.component + ": generated " + std::to_string(a.generated_loc) + " LoC, manual " +
               std::to_string(a.manual_loc) + " LoC, fraction " + format("%.3f", a.fraction_generated) + "\n";
    }
    if (report.config_time_ms) out += "configuration time: " + format("%.1f", *report.config_time_ms) + " ms\n";
    if (report.equivalence) out += to_text(*report.equivalence);
    return out;
}

}  // namespace fnkit
