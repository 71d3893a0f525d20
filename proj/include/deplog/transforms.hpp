#pragma once

#include "deplog/transforms/collapse.hpp"
#include "deplog/transforms/normal_form.hpp"
#include "deplog/transforms/prenex.hpp"
#include "deplog/transforms/skolem.hpp"
#include "deplog/transforms/star.hpp"
