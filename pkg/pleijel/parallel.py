import logging
from multiprocessing import Pool
from typing import Any, Callable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

logger = logging.getLogger(__name__)


class TaskResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int = Field(..., description="Position of the task in the input list")
    value: Any = Field(None, description="Return value of the task, if any")
    exception: Optional[Exception] = Field(
        None, description="Exception the task raised, if any"
    )


def run_task(index: int, func: Callable, args: Tuple) -> Tuple[int, Any, Optional[Exception]]:
    try:
        return index, func(*args), None
    except Exception as e:
        logger.error(f"Task {index} ({func.__name__}{args!r}) failed: {e}", exc_info=True)
        return index, None, e


def map_orders(
    func: Callable,
    args_list: Sequence[Tuple],
    num_workers: int = 1,
    desc: Optional[str] = None,
) -> List[Any]:
    """Applies `func` to each argument tuple, serially or in a process pool.

    Results come back in input order whatever the worker count, so
    reductions over them are deterministic.

    Args:
        func (Callable): A picklable module-level function.
        args_list (Sequence[Tuple]): One argument tuple per task.
        num_workers (int, optional): Worker processes. 1 runs in-process.
            Defaults to 1.
        desc (str, optional): Progress bar label. No bar is drawn if None.

    Raises:
        Exception: The first failing task's exception, re-raised after
            every task has finished.

    Returns:
        List[Any]: func(*args) for each args in args_list.
    """
    args_list = list(args_list)
    tasks = [(i, func, args) for i, args in enumerate(args_list)]
    progress_bar = (
        tqdm(total=len(tasks), desc=desc, unit="order") if desc is not None else None
    )

    raw = []
    if num_workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            raw.append(run_task(*task))
            if progress_bar is not None:
                progress_bar.update(1)
    else:
        with Pool(min(num_workers, len(tasks))) as executor:
            for result in executor.starmap(run_task, tasks):
                raw.append(result)
                if progress_bar is not None:
                    progress_bar.update(1)

    if progress_bar is not None:
        progress_bar.close()

    results = [TaskResult(index=i, value=v, exception=e) for i, v, e in raw]
    results.sort(key=lambda r: r.index)
    for result in results:
        if result.exception is not None:
            raise result.exception
    return [result.value for result in results]
