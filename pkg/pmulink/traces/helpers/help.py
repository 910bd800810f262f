from ...imports import *

__all__ = ["help"]


def help(self):
    """
    Print a quick reference of key actions available for this object.
    """
    print(
        textwrap.dedent(
            f"""
    Hooray for you! You asked for help on what you can do
    with this {self.__class__.__name__}. Here's a quick
    reference of a few available options for things to try."""
        )
    )

    base_directory = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    descriptions_files = sorted(
        glob.glob(os.path.join(base_directory, "*", "descriptions.txt"))
    )
    for d in descriptions_files:
        c = os.path.basename(os.path.dirname(d))
        header = (
            "\n" + "-" * (len(c) + 4) + "\n" + f"| {c} |\n" + "-" * (len(c) + 4) + "\n"
        )

        table = ascii.read(d, delimiter="|")
        items = []
        for row in table:
            name = row["name"].strip()
            if hasattr(self, name) or name == "[:]":
                function_call = name if name == "[:]" else f".{name}()"
                items.append(
                    f"{row['cartoon'].strip()} | {function_call:<28} \n   {row['description'].strip()}"
                )
        if len(items) > 0:
            print(header)
            print("\n".join(items))
