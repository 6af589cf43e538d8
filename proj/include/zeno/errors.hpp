// Copyright 2026 The zeno-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand shapes disagree, or a composite dimension would overflow.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A value violates a type invariant (non-Hermitian generator, unnormalised
// state, field index outside the truncated space, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// The projection onto the measured field state had vanishing probability.
class SurvivalCutoff : public Error {
public:
    SurvivalCutoff(int step, double survival)
        : Error("measurement survival probability " + std::to_string(survival) +
                " below cutoff at step " + std::to_string(step)),
          step_(step), survival_(survival) {}

    int step() const noexcept { return step_; }
    double survival() const noexcept { return survival_; }

private:
    int step_;
    double survival_;
};

// Configuration document rejected. line() is 0 when the problem is not tied
// to a single line (e.g. a missing key).
class ConfigError : public Error {
public:
    ConfigError(std::string key, int line, const std::string& what)
        : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& what) {
        std::string out = "config";
        if (line > 0) out += " line " + std::to_string(line);
        if (!key.empty()) out += " key '" + key + "'";
        return out + ": " + what;
    }

    std::string key_;
    int line_;
};

}  // namespace zeno
