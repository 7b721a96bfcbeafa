#pragma once

#include "arcade/error.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace arcade {

// Global resource caps. Hitting one raises CapExceeded; nothing degrades
// silently. ARCADE_CAPS="key=value,key=value" overrides any field.
struct Caps {
    int chromatic_max_vertices = 24;
    long long max_atoms = 2'000'000;
    long long max_matrices = 2'000'000;
    long long max_hypernetworks = 2'000'000;
    long long max_states = 1'000'000;
    long long max_completions = 200'000;
    int max_rounds = 64;
    int max_nodes = 16;
    int workers = 1;

    static Caps defaults() {
        Caps c;
        unsigned hw = std::thread::hardware_concurrency();
        c.workers = hw ? static_cast<int>(hw > 8 ? 8 : hw) : 1;
        return c;
    }

    void set(const std::string& key, const std::string& value) {
        long long v = 0;
        try {
            v = std::stoll(value);
        } catch (...) {
            throw StructuralError("caps: bad value for " + key + ": " + value);
        }
        if (key == "chromatic_max_vertices") chromatic_max_vertices = static_cast<int>(v);
        else if (key == "max_atoms") max_atoms = v;
        else if (key == "max_matrices") max_matrices = v;
        else if (key == "max_hypernetworks") max_hypernetworks = v;
        else if (key == "max_states") max_states = v;
        else if (key == "max_completions") max_completions = v;
        else if (key == "max_rounds") max_rounds = static_cast<int>(v);
        else if (key == "max_nodes") max_nodes = static_cast<int>(v);
        else if (key == "workers") workers = static_cast<int>(v);
        else throw StructuralError("caps: unknown key " + key);
    }

    // Applies a "k=v,k=v" override list.
    void apply_spec(const std::string& spec) {
        std::size_t pos = 0;
        while (pos < spec.size()) {
            std::size_t comma = spec.find(',', pos);
            if (comma == std::string::npos) comma = spec.size();
            std::string item = spec.substr(pos, comma - pos);
            if (!item.empty()) {
                std::size_t eq = item.find('=');
                if (eq == std::string::npos)
                    throw StructuralError("caps: expected key=value, got " + item);
                set(item.substr(0, eq), item.substr(eq + 1));
            }
            pos = comma + 1;
        }
    }

    static Caps from_env() {
        Caps c = defaults();
        if (const char* e = std::getenv("ARCADE_CAPS")) c.apply_spec(e);
        return c;
    }
};

} // namespace arcade
