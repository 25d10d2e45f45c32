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

#ifndef BUNGEE_SRC_EXPR_NODE_HPP
#define BUNGEE_SRC_EXPR_NODE_HPP

#include <array>
#include <cstdint>

#include "bungee/expr.hpp"

namespace bungee {

// Deepest tree any builder will produce; keeps every recursive pass well
// inside the default thread stack.
inline constexpr std::uint32_t kMaxDepth = 10'000;

struct Expr::Node {
  NodeKind kind = NodeKind::Var;
  std::uint8_t arity = 0;
  bool entire = true;
  int exponent = 0;
  std::uint32_t depth = 1;
  Complex value{};
  std::uint64_t count = 1;
  std::uint64_t vars = 0;
  // Empty handles, not z: default-constructing Expr would recurse into
  // the shared Var node's own construction.
  std::array<Expr, 2> children{Expr(std::shared_ptr<const Node>{}),
                               Expr(std::shared_ptr<const Node>{})};
};

}  // namespace bungee

#endif  // BUNGEE_SRC_EXPR_NODE_HPP
