#pragma once

#include "deplog/corpus.hpp"
#include "deplog/error.hpp"
#include "deplog/eso_eval.hpp"
#include "deplog/fragments.hpp"
#include "deplog/harness.hpp"
#include "deplog/json_io.hpp"
#include "deplog/parser.hpp"
#include "deplog/structures.hpp"
#include "deplog/syntax.hpp"
#include "deplog/team_eval.hpp"
#include "deplog/transforms.hpp"
