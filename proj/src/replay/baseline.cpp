// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/baseline.hpp"

#include "fnkit/runtime/error_manager.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fnkit {

RunTrace run_baseline(const std::vector<BaselineFunction>& functions, const SignalTrace& stimuli,
                      std::int64_t duration_us, const std::vector<Datatype>& named_types) {
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
    TypeTable types = make_type_table(named_types);
    std::map<std::string, const Datatype*> datatype_of;
    std::map<std::string, Value> store;
    for (const auto& f : functions) {
        for (auto& [name, d] : make_type_table(f.model.declared_datatypes())) types.emplace(name, d);
    }
    for (const auto& f : functions) {
        for (const auto& i : f.model.interface_data) {
            datatype_of.emplace(i.name, &i.datatype);
            store.emplace(i.name, default_value(i.datatype, types));
        }
    }

    std::vector<const BaselineFunction*> order;
    for (const auto& f : functions) order.push_back(&f);
    std::sort(order.begin(), order.end(), [](const BaselineFunction* a, const BaselineFunction* b) {
        const auto pa = a->model.scheduling.priority.value_or(0);
        const auto pb = b->model.scheduling.priority.value_or(0);
        if (pa != pb) return pa < pb;
        return a->model.name < b->model.name;
    });

    RunTrace trace;
    for (const auto* f : order) f->function->init();

    std::vector<std::int64_t> next(order.size(), kNever);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i]->model.scheduling.cycle_time > 0) {
            next[i] = ms_to_us(order[i]->model.scheduling.initial_offset.value_or(0.0));
        }
    }
    auto stimulus_time = [&](std::size_t k) {
        return static_cast<std::int64_t>(std::llround(stimuli.records[k].t_ms * 1000.0));
    };
    std::size_t k = 0;
    for (;;) {
        std::int64_t t = kNever;
        if (k < stimuli.records.size() && stimulus_time(k) < duration_us) t = stimulus_time(k);
        for (auto n : next) {
            if (n < duration_us) t = std::min(t, n);
        }
        if (t == kNever) break;
        while (k < stimuli.records.size() && stimulus_time(k) == t) {
            const auto& r = stimuli.records[k++];
            auto d = datatype_of.find(r.path);
            store[r.path] = d == datatype_of.end() ? r.value : coerce_value(*d->second, r.value, types);
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (next[i] != t) continue;
            const auto& model = order[i]->model;
            auto& fn = *order[i]->function;
            SignalValues inputs;
            for (const auto& iface : model.interface_data) {
                if (iface.role == InterfaceRole::kConsumer) inputs[iface.name] = store[iface.name];
            }
            fn.set_external_inputs(inputs);
            trace.add(t, "step_begin", model.name);
            fn.step();
            trace.add(t, "step_end", model.name);
            const SignalValues outputs = fn.get_external_outputs();
            for (const auto& iface : model.interface_data) {
                if (iface.role != InterfaceRole::kProvider) continue;
                auto it = outputs.find(iface.name);
                if (it == outputs.end()) {
                    throw Error(ErrorKind::kInvalidArgument, model.name + ": no output for " + iface.name);
                }
                Value v = coerce_value(iface.datatype, it->second, types);
                store[iface.name] = v;
                trace.add(t, "publish", model.name, {{"path", iface.name}, {"value", v}});
            }
            next[i] += ms_to_us(model.scheduling.cycle_time);
        }
    }
    for (const auto* f : order) f->function->terminate();
    return trace;
}

}  // namespace fnkit
