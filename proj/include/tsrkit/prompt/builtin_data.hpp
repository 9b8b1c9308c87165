#pragma once
// Embedded copies of the shipped prompt templates and few-shot exemplars.
// Mirrors the contents of the templates/ directory; keep the two in sync
// (the template consistency test compares them).

#include <array>

namespace tsrkit::prompt::builtin_data {

inline constexpr const char* kInstructionUnivariate = R"tpl(You are an expert in time series anomaly detection. We provide a time series (called Observation), you should give us the anomaly type (called Action) and its reasons (called Thought). Thought steps can infer the current abnormal situation of a time series. Action is an abnormal category with the following 0-14 types, where 0 is a normal category. The explanations of 0-14 actions are as follows:
{CATEGORY LIST}

The anomaly detection of each time series is divided into three steps: Observation, Thought, and Action. After analyzing each observation, please provide the next Thought and next Action. Here are some examples:
{FEW SHOTS}

Here is a univariate time series observation that we need to check for anomaly categories. We already know that it is a {ANOMALY LABEL} sequence and from the domain of {DOMAIN}.
Please make a Thought judgment within \\boxed1{} and put your final Action in \\boxed2{} respectively, where action must just be a category name, not id.
Observation: {OBSERVATION}
Thought: \\boxed1{}
Action: \\boxed2{})tpl";

inline constexpr const char* kInstructionMultivariate = R"tpl(You are an expert in multivariate time series anomaly detection. We provide a multivariate time series (called Observation), where each time point contains multiple variables. Your task is to identify the anomaly type (called Action) and provide detailed reasoning (called Thought). The Thought should analyze the relationships, dynamics, and structures across all variables and time points to infer any abnormal behavior. The Action must be one of the following seven types, where type 0 means no anomaly. The definitions are:
{CATEGORY LIST}

The anomaly detection of each time series is divided into three steps: Observation, Thought, and Action. After analyzing each observation, please provide the next Thought and next Action. Here are some examples:
{FEW SHOTS}

Here is a multivariate time series observation that we need to check for anomaly categories. We already know that it is a {ANOMALY LABEL} sequence and from the domain of {DOMAIN}.
Please make a Thought judgment within \\boxed1{} and put your final Action in \\boxed2{} respectively, where action must just be a category name, not id.
Observation: {OBSERVATION}
Thought: \\boxed1{}
Action: \\boxed2{})tpl";

inline constexpr const char* kAnnotation = R"tpl(A task we have is:
[{INSTRUCTION}]

Now we have the outputs of models, there are:
{MODEL OUTPUTS}

Please evaluate the consistency between the output of each model and the task intent, and score and provide reasons for the answers of each model. The score is from 1 to 5:
1. **Irrelevant**: No alignment.
2. **Partial Focus**: Poor handling in a certain aspect, such as misclassification of exceptions.
3. **Partial Compliance**: The classification of anomalies is accurate, but there may be slight deviations or neglect of others in the reasons.
4. **Almost There**: Alignment close to expert answers, slight deviation.
5. **Comprehensive Compliance**: Completely consistent with expert answers, meeting all requirements.

Based on the above ratings, please provide me with a ranking to compare the output results from the above models.

Here is an example of the output format:
<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>)tpl";

inline constexpr const char* kCritique = R"tpl(A task we have is:
[{INSTRUCTION}]

Given the model answer to an instruction, your role is to provide specific and constructive feedback for me. When you review the model answer, consider its helpfulness, truthfulness, honesty, and how well it followed the instructions.

The model answer is:
Thought: {THOUGHT}
Action: {ACTION}

I need you to assume the role of an anomaly detection expert. It's essential that your feedback not only highlights areas for improvement but also provides actionable suggestions to help the model understand how to enhance its performance. Please make improvements based on the thought and action of the model and follow the same output. If no improvement is needed, just return **None**.

The following are examples of formats that need to be improved for output:
Thought: {IMPROVED THOUGHT}
Action: {IMPROVED ACTION})tpl";

struct ExemplarData {
  bool multivariate;
  const char* category;
  const char* text;
};

inline constexpr std::array<ExemplarData, 22> kExemplars = {{
    {false, "Normal Sequence",
     R"ex(Observation: 0.2, 0.22, 0.19, 0.21, 0.2, 0.23, 0.18, 0.2, 0.21, 0.19, 0.22, 0.2, 0.21, 0.19, 0.2, 0.22
Thought: \\boxed1{The values fluctuate narrowly around 0.2 with no spikes, level shifts, trend breaks, missing cycles, or repeated readings. The variability is steady from start to end, which matches ordinary measurement noise.}
Action: \\boxed2{Normal Sequence})ex"},
    {false, "Point Anomaly",
     R"ex(Observation: 0.5, 0.52, 0.48, 0.51, 0.49, 0.5, 5.8, 0.5, 0.53, 0.47, 0.5, 0.52, 0.49, 0.51
Thought: \\boxed1{A single reading of 5.8 at position 7 sits more than ten local standard deviations above the surrounding values, while both neighbors remain near 0.5. Exactly one isolated point breaks the pattern and the series is otherwise unremarkable.}
Action: \\boxed2{Point Anomaly})ex"},
    {false, "Periodic Change Anomaly",
     R"ex(Observation: 0.0, 0.9, 0.0, -0.9, 0.0, 0.9, 0.0, -0.9, 0.03, -0.02, 0.04, -0.01, 0.0, 0.9, 0.0, -0.9
Thought: \\boxed1{A regular four-step cycle between +0.9 and -0.9 runs through the series, but the cycle expected around positions 9-12 is missing: the curve stays flat near zero for one full period before the rhythm resumes. The established periodic pattern is disrupted.}
Action: \\boxed2{Periodic Change Anomaly})ex"},
    {false, "Trend Change Anomaly",
     R"ex(Observation: 0.1, 0.2, 0.31, 0.4, 0.49, 0.6, 0.71, 0.8, 0.7, 0.61, 0.5, 0.4, 0.29, 0.2
Thought: \\boxed1{The series climbs steadily by about 0.1 per step for the first eight points, then from position 9 the slope flips sign and the series declines at the same rate. The long-term trend changes abruptly while the noise level stays the same.}
Action: \\boxed2{Trend Change Anomaly})ex"},
    {false, "Change Point Anomaly",
     R"ex(Observation: 1.0, 1.02, 0.98, 1.01, 0.99, 1.0, 1.02, 2.5, 2.52, 2.48, 2.5, 2.51, 2.49, 2.5
Thought: \\boxed1{The mean level jumps from about 1.0 to about 2.5 at position 8 and stays there for the rest of the sequence. The variance is unchanged on both sides, so the statistical properties shift abruptly at one point in time.}
Action: \\boxed2{Change Point Anomaly})ex"},
    {false, "Distributional Change Anomaly",
     R"ex(Observation: 0.1, -0.08, 0.05, -0.04, 0.09, -0.07, 0.06, -0.05, 1.2, -1.5, 0.9, -1.1, 1.4, -0.8, 1.1, -1.3
Thought: \\boxed1{The first half varies within about +-0.1 while the second half swings within about +-1.5 around the same mean. No single point dominates and there is no level shift; instead the spread of the value distribution changes dramatically partway through.}
Action: \\boxed2{Distributional Change Anomaly})ex"},
    {false, "Amplitude Anomaly",
     R"ex(Observation: 0.3, -0.3, 0.31, -0.29, 0.3, -0.31, 2.1, -2.0, 2.2, -2.1, 0.3, -0.3, 0.29, -0.31
Thought: \\boxed1{An alternating wave of +-0.3 suddenly swings to +-2.1 for four steps before settling back. The oscillation keeps its shape and timing but its amplitude exceeds the normal upper and lower bounds by a factor of seven.}
Action: \\boxed2{Amplitude Anomaly})ex"},
    {false, "Pattern Change Anomaly",
     R"ex(Observation: 0.0, 0.7, 0.0, -0.7, 0.0, 0.7, 0.0, -0.7, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75
Thought: \\boxed1{The first part of the series is a zigzag oscillation between +0.7 and -0.7, but from position 9 the oscillation disappears and the values follow a straight ramp instead. The generating pattern switches from one form to another rather than just growing or shifting.}
Action: \\boxed2{Pattern Change Anomaly})ex"},
    {false, "Sparse Anomaly",
     R"ex(Observation: 0.4, 0.41, 0.39, 3.2, 0.4, 0.42, 0.38, 0.4, -2.6, 0.41, 0.39, 0.4, 3.0, 0.41, 0.4, 0.39
Thought: \\boxed1{Three isolated extreme readings appear at positions 4, 9 and 13 with perfectly normal values between them. The disturbances are occasional single points scattered across the series rather than one contiguous faulty stretch.}
Action: \\boxed2{Sparse Anomaly})ex"},
    {false, "Repeated Value Anomaly",
     R"ex(Observation: 0.7, 0.73, 0.69, 0.55, 0.55, 0.55, 0.55, 0.71, 0.68, 0.55, 0.55, 0.55, 0.55, 0.7
Thought: \\boxed1{The exact value 0.55 repeats in two runs of four consecutive readings, interrupting the normal fluctuation, and the identical digits make chance coincidence implausible. This looks like a stuck or cached measurement reporting the same number intermittently.}
Action: \\boxed2{Repeated Value Anomaly})ex"},
    {false, "Sudden Flatline Anomaly",
     R"ex(Observation: 0.9, 1.1, 0.95, 1.05, 0.92, 1.08, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0
Thought: \\boxed1{The signal fluctuates normally for six steps and then freezes at exactly 1.0 with zero variation for the rest of the sequence. A live signal suddenly becoming a perfectly flat line indicates the source stopped updating.}
Action: \\boxed2{Sudden Flatline Anomaly})ex"},
    {false, "Drift Anomaly",
     R"ex(Observation: 0.0, 0.02, -0.01, 0.01, 0.0, -0.02, 0.1, 0.22, 0.35, 0.49, 0.61, 0.74, 0.88, 1.01
Thought: \\boxed1{The level holds near zero for the first six steps, then each subsequent reading climbs a little further from the baseline without ever returning. The departure is gradual and cumulative rather than abrupt, which is the signature of drift.}
Action: \\boxed2{Drift Anomaly})ex"},
    {false, "Sudden Spike Anomaly",
     R"ex(Observation: 0.2, 0.21, 0.19, 0.2, 0.22, 4.5, 4.6, 4.4, 0.21, 0.2, 0.19, 0.2, 0.21, 0.2
Thought: \\boxed1{The series jumps to around 4.5 for three consecutive steps and then returns exactly to its previous level. A short-lived burst that reverts on its own distinguishes this from a persistent level change.}
Action: \\boxed2{Sudden Spike Anomaly})ex"},
    {false, "Continuous Segment Anomaly",
     R"ex(Observation: 0.5, 0.52, 0.48, 0.51, 1.8, 1.82, 1.79, 1.81, 1.8, 1.78, 0.51, 0.49, 0.5, 0.52
Thought: \\boxed1{Six consecutive readings sit near 1.8 instead of the usual 0.5 and then the series reverts to its old level. A contiguous block of points deviates together, long enough to be a segment rather than a spike.}
Action: \\boxed2{Continuous Segment Anomaly})ex"},
    {false, "Nonlinear Pattern Anomaly",
     R"ex(Observation: 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.72, 0.9, 1.2, 1.7, 2.5, 3.9, 6.2, 10.1
Thought: \\boxed1{The series begins as a clean linear staircase rising by 0.1 per step, but from position 7 each increment grows multiplicatively and the curve bends into exponential growth. The original linear rule is broken by a nonlinear pattern, not by a simple slope change.}
Action: \\boxed2{Nonlinear Pattern Anomaly})ex"},
    {true, "Normal Sequence",
     R"ex(Observation: "s1": [0.5, 0.52, 0.49, 0.51, 0.5, 0.53, 0.48, 0.5, 0.51, 0.49, 0.52, 0.5]; "s2": [1.0, 1.02, 0.99, 1.01, 1.0, 1.03, 0.98, 1.0, 1.01, 0.99, 1.02, 1.0]
Thought: \\boxed1{Both variables fluctuate tightly around stable levels and move in step with each other throughout. Their relationship, spread and timing stay constant, with no joint or individual irregularity.}
Action: \\boxed2{Normal Sequence})ex"},
    {true, "Covariance Structure Anomaly",
     R"ex(Observation: "s1": [0.2, 0.5, 0.1, 0.6, 0.2, 0.5, 0.1, 0.6, 0.2, 0.5, 0.1, 0.6]; "s2": [0.3, 0.6, 0.2, 0.7, 0.3, 0.6, 0.8, 0.3, 0.9, 0.4, 0.8, 0.3]
Thought: \\boxed1{For the first six steps the two variables rise and fall together, but from position 7 onward s2 moves opposite to s1: whenever s1 rises, s2 now falls. Each variable alone looks plausible, yet their correlation reverses sign, so the covariance structure between them changes suddenly.}
Action: \\boxed2{Covariance Structure Anomaly})ex"},
    {true, "Temporal Dependency Anomaly",
     R"ex(Observation: "s1": [0.1, 0.8, 0.2, 0.1, 0.9, 0.2, 0.1, 0.8, 0.1, 0.2, 0.9, 0.1]; "s2": [0.0, 0.1, 0.8, 0.2, 0.1, 0.9, 0.2, 0.1, 0.8, 0.1, 0.2, 0.9]
Thought: \\boxed1{Early on, every pulse in s1 is echoed by s2 exactly one step later, a fixed response delay. Around position 8 the echo arrives three steps late and then inconsistently, so the expected lag between the variables is violated even though each series alone still pulses normally.}
Action: \\boxed2{Temporal Dependency Anomaly})ex"},
    {true, "Trend Divergence Anomaly",
     R"ex(Observation: "s1": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2]; "s2": [0.12, 0.21, 0.32, 0.41, 0.5, 0.61, 0.5, 0.4, 0.31, 0.2, 0.11, 0.0]
Thought: \\boxed1{Both variables climb together at the same rate for the first half, sharing one trend. From position 7, s2 turns downward while s1 keeps rising, so one member of the group abandons the shared trend, pointing at a localized fault rather than a global shift.}
Action: \\boxed2{Trend Divergence Anomaly})ex"},
    {true, "Joint Space Anomaly",
     R"ex(Observation: "s1": [0.2, 0.8, 0.3, 0.7, 0.25, 0.75, 0.8, 0.85, 0.8, 0.3, 0.7, 0.25]; "s2": [0.25, 0.85, 0.35, 0.75, 0.3, 0.8, 0.2, 0.15, 0.25, 0.35, 0.75, 0.3]
Thought: \\boxed1{Each variable stays inside its usual range the whole time. Normally high s1 comes with high s2, but during positions 7-9 s1 is at its high end while s2 sits at its low end, a combination never seen elsewhere. The anomaly exists only in the joint configuration of the two variables.}
Action: \\boxed2{Joint Space Anomaly})ex"},
    {true, "Principal Component Space Anomaly",
     R"ex(Observation: "s1": [0.5, 0.6, 0.4, 0.55, 0.5, 0.62, 0.68, 0.41, 0.5, 0.6, 0.45, 0.5]; "s2": [0.52, 0.61, 0.42, 0.56, 0.51, 0.6, 0.45, 0.66, 0.52, 0.61, 0.44, 0.51]; "s3": [0.48, 0.59, 0.41, 0.54, 0.5, 0.61, 0.67, 0.4, 0.49, 0.58, 0.43, 0.5]
Thought: \\boxed1{All three variables normally move along one common direction, so the data is nearly one-dimensional. Around positions 7-8 small coordinated disagreements appear: s2 moves against s1 and s3 by amounts that look like noise channel by channel, but together they inject energy orthogonal to the usual principal direction. The deviation is visible only in the low-dimensional latent space.}
Action: \\boxed2{Principal Component Space Anomaly})ex"},
    {true, "Collinearity Shift Anomaly",
     R"ex(Observation: "s1": [0.3, 0.5, 0.2, 0.6, 0.4, 0.3, 0.5, 0.2, 0.6, 0.4, 0.3, 0.5]; "s2": [0.6, 1.0, 0.4, 1.2, 0.8, 0.6, 0.7, 1.1, 0.5, 0.6, 1.2, 0.4]
Thought: \\boxed1{For the first six steps s2 is exactly twice s1, a tight linear dependency. From position 7 the proportionality dissolves: s2 takes values unrelated to s1 even though both keep their usual ranges. The redundancy between the variables suddenly breaks down.}
Action: \\boxed2{Collinearity Shift Anomaly})ex"},
}};

}  // namespace tsrkit::prompt::builtin_data
