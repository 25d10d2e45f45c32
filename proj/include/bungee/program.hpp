/* Copyright 2026 The bungee-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BUNGEE_PROGRAM_HPP
#define BUNGEE_PROGRAM_HPP

#include <cstdint>
#include <vector>

#include "bungee/expr.hpp"

namespace bungee {

/// An Expr flattened to postfix code for repeated evaluation.
///
/// Produces bit-identical results to eval(); orbit and grid code use it
/// because it avoids pointer chasing and shared_ptr traffic per step.
class Program {
 public:
  explicit Program(const Expr& e);

  EvalResult operator()(Complex z, bool z_underflow = false) const;

  std::size_t size() const noexcept { return code_.size(); }

  struct Instr {
    NodeKind op;
    int exponent;
    Complex value;
  };

 private:
  void emit(const Expr& e, std::size_t depth);

  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

}  // namespace bungee

#endif  // BUNGEE_PROGRAM_HPP
