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

#include "bungee/program.hpp"

#include <cstddef>
#include <span>

#include "value_ops.hpp"

namespace bungee {

Program::Program(const Expr& e) {
  code_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(e.node_count(), 1u << 20)));
  emit(e, 1);
}

void Program::emit(const Expr& e, std::size_t depth) {
  max_stack_ = std::max(max_stack_, depth);
  switch (e.kind()) {
    case NodeKind::Var: code_.push_back({NodeKind::Var, 0, {}}); return;
    case NodeKind::Const: code_.push_back({NodeKind::Const, 0, e.value()}); return;
    default: break;
  }
  // Operands left to right, so the first failing operation matches eval().
  emit(e.child(0), depth);
  if (e.arity() == 2) emit(e.child(1), depth + 1);
  code_.push_back({e.kind(), e.exponent(), {}});
}

namespace {

using detail::Fault;
using detail::Value;

constexpr std::size_t kInlineSlots = 64;

Fault run(std::span<const Program::Instr> code, Value z, std::span<Value> stack, Value& out);

}  // namespace

EvalResult Program::operator()(Complex z, bool z_underflow) const {
  const Value input{z, z_underflow && is_zero(z)};
  Value out;
  Fault f;
  if (max_stack_ <= kInlineSlots) {
    // Raw storage: Value is an implicit-lifetime type and every slot is
    // written before it is read, so no per-call initialisation is needed.
    alignas(Value) std::byte raw[kInlineSlots * sizeof(Value)];
    f = run(code_, input, std::span<Value>(reinterpret_cast<Value*>(raw), kInlineSlots), out);
  } else {
    std::vector<Value> stack(max_stack_);
    f = run(code_, input, stack, out);
  }
  return detail::to_result(f, out);
}

namespace {

Fault run(std::span<const Program::Instr> code, Value z, std::span<Value> stack, Value& out) {
  std::size_t top = 0;  // number of live slots
  for (std::size_t pc = 0; pc < code.size(); ++pc) {
    const auto& in = code[pc];
    Fault f = Fault::None;
    switch (in.op) {
      case NodeKind::Var: stack[top++] = z; continue;
      case NodeKind::Const: stack[top++] = Value{in.value, false}; continue;
      case NodeKind::Neg: f = detail::op_neg(stack[top - 1], stack[top - 1]); break;
      case NodeKind::Pow: f = detail::op_pow(stack[top - 1], in.exponent, stack[top - 1]); break;
      case NodeKind::Exp: f = detail::op_exp(stack[top - 1], stack[top - 1]); break;
      case NodeKind::Sin: f = detail::op_sin(stack[top - 1], stack[top - 1]); break;
      case NodeKind::Cos: f = detail::op_cos(stack[top - 1], stack[top - 1]); break;
      case NodeKind::Add: f = detail::op_add(stack[top - 2], stack[top - 1], stack[top - 2]); --top; break;
      case NodeKind::Sub: f = detail::op_sub(stack[top - 2], stack[top - 1], stack[top - 2]); --top; break;
      case NodeKind::Mul: f = detail::op_mul(stack[top - 2], stack[top - 1], stack[top - 2]); --top; break;
      case NodeKind::Div: f = detail::op_div(stack[top - 2], stack[top - 1], stack[top - 2]); --top; break;
    }
    if (f == Fault::None) continue;
    // In postfix the instruction just before a Div is the root of its
    // denominator; the numerator sits one slot below.
    if (f == Fault::Overflow && pc + 1 < code.size() && code[pc + 1].op == NodeKind::Div &&
        detail::absorb_overflow(stack[top - 2], stack[top - 2])) {
      --top;
      ++pc;
      continue;
    }
    return f;
  }
  out = stack[0];
  return Fault::None;
}

}  // namespace

}  // namespace bungee
